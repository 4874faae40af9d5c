// Copyright 2026 The surfc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "surfc/error.hpp"
#include "surfc/oracle.hpp"
#include "surfc/rng.hpp"
#include "surfc/router.hpp"

using namespace surfc;

namespace {

using Pairs = std::vector<std::pair<TileCoord, TileCoord>>;

std::vector<TileCoord> all_tiles(int rows, int cols) {
  std::vector<TileCoord> out;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) out.push_back({r, c});
  return out;
}

// Routes of one batch must jointly respect every capacity.
void check_disjoint(const RoutingGraph& g, const Pairs& pairs, const std::vector<RoutePath>& routes) {
  REQUIRE(routes.size() == pairs.size());
  std::vector<int> used(static_cast<std::size_t>(g.num_resources()), 0);
  for (std::size_t i = 0; i < routes.size(); ++i) {
    CHECK(g.connects(routes[i], pairs[i].first, pairs[i].second));
    for (int r : routes[i].resources()) ++used[r];
  }
  for (int r = 0; r < g.num_resources(); ++r) CHECK(used[r] <= g.capacity(r));
}

}  // namespace

TEST_CASE("adjacent tiles on an idle chip") {
  const auto dd = ChipLayout::uniform(Model::DoubleDefect, 3, {2, 2}, 1);
  const RoutingGraph gd(dd, all_tiles(2, 2));
  Occupancy od(gd);
  const auto p = find_path(gd, od, {0, 0}, {0, 1});
  REQUIRE(p);
  CHECK(p->length() == 1);
  CHECK(gd.connects(*p, {0, 0}, {0, 1}));

  const auto ls = ChipLayout::uniform(Model::LatticeSurgery, 3, {2, 2}, 1);
  const RoutingGraph gl(ls, all_tiles(2, 2));
  Occupancy ol(gl);
  const auto q = find_path(gl, ol, {0, 0}, {1, 0});
  REQUIRE(q);
  CHECK(q->direct());
}

TEST_CASE("saturated terminals block a pair") {
  const auto layout = ChipLayout::uniform(Model::DoubleDefect, 3, {1, 2}, 1);
  const RoutingGraph g(layout, all_tiles(1, 2));
  Occupancy occ(g);
  for (int t : g.terminals({0, 0})) occ.commit(RoutePath{{t}, {}}, 0);
  CHECK_FALSE(find_path(g, occ, {0, 0}, {0, 1}));
  CHECK(find_path(g, occ, {0, 0}, {0, 1}, 1));
}

TEST_CASE("commit durations and capacities") {
  const auto layout = ChipLayout::uniform(Model::DoubleDefect, 3, {1, 2}, 2);
  const RoutingGraph g(layout, all_tiles(1, 2));
  Occupancy occ(g);
  const auto p = find_path(g, occ, {0, 0}, {0, 1});
  REQUIRE(p);
  occ.commit(*p, 5, 3);
  CHECK(occ.used(p->nodes[0], 7) == 1);
  CHECK(occ.used(p->nodes[0], 8) == 0);
  CHECK(occ.used(p->nodes[0], 4) == 0);

  occ.commit(*p, 0);
  CHECK(occ.path_free(*p, 0));
  occ.commit(*p, 0);
  CHECK_FALSE(occ.path_free(*p, 0));
  CHECK_THROWS_AS(occ.commit(*p, 0), std::logic_error);
  occ.release(*p, 0);
  CHECK(occ.path_free(*p, 0));

  occ.reserve_tile({0, 0}, 2, 3);
  CHECK_FALSE(occ.tile_free({0, 0}, 4));
  CHECK(occ.tile_free({0, 0}, 5));
  CHECK_THROWS_AS(occ.reserve_tile({0, 0}, 3), std::logic_error);
}

TEST_CASE("find_path is shortest among feasible routes") {
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const Model m = trial % 2 ? Model::LatticeSurgery : Model::DoubleDefect;
    const int rows = static_cast<int>(rng.uniform(2, 4)), cols = static_cast<int>(rng.uniform(2, 4));
    const auto layout = ChipLayout::uniform(m, 3, {rows, cols}, 1);
    auto tiles = all_tiles(rows, cols);
    rng.shuffle(tiles);
    const RoutingGraph g(layout, tiles);
    Occupancy occ(g);
    // Pre-load one random route to make the search non-trivial.
    if (auto first = find_path(g, occ, tiles[2], tiles[3])) occ.commit(*first, 0);
    const auto p = find_path(g, occ, tiles[0], tiles[1]);
    int best = -1;
    for (const auto& r : enumerate_routes(g, tiles[0], tiles[1], g.num_nodes())) {
      if (!occ.path_free(r, 0)) continue;
      if (best < 0 || r.length() < best) best = r.length();
    }
    CAPTURE(trial);
    if (best < 0) {
      CHECK_FALSE(p);
    } else {
      REQUIRE(p);
      CHECK(p->length() == best);
    }
  }
}

TEST_CASE("three pairs on a bandwidth-1 chip route one after another") {
  const auto layout = ChipLayout::uniform(Model::DoubleDefect, 3, {3, 3}, 1);
  const RoutingGraph g(layout, all_tiles(3, 3));
  Occupancy occ(g);
  const Pairs pairs{{{0, 0}, {2, 2}}, {{0, 2}, {2, 0}}, {{1, 0}, {1, 2}}};
  std::vector<RoutePath> routes;
  for (const auto& [a, b] : pairs) {
    auto p = find_path(g, occ, a, b);
    REQUIRE(p);
    occ.commit(*p, 0);
    routes.push_back(*p);
  }
  check_disjoint(g, pairs, routes);
}

TEST_CASE("nested pairs at bandwidth 1") {
  const auto layout = ChipLayout::uniform(Model::DoubleDefect, 3, {4, 4}, 1);
  const auto tiles = all_tiles(4, 4);
  const Pairs nested{{{0, 0}, {3, 3}}, {{1, 1}, {2, 2}}, {{1, 2}, {2, 1}}};
  OracleBudget budget;
  budget.max_rows = budget.max_cols = 4;
  CHECK(routing_feasible(layout, tiles, nested, budget));
  const RoutingGraph g(layout, tiles);
  check_disjoint(g, nested, route_batch_guaranteed(g, nested));
}

TEST_CASE("four crossing pairs exceed a bandwidth-1 chip") {
  const auto tiles = all_tiles(3, 3);
  const Pairs star{{{0, 0}, {2, 2}}, {{0, 1}, {2, 1}}, {{0, 2}, {2, 0}}, {{1, 0}, {1, 2}}};
  for (auto m : {Model::DoubleDefect, Model::LatticeSurgery}) {
    const auto b1 = ChipLayout::uniform(m, 3, {3, 3}, 1);
    CHECK_FALSE(routing_feasible(b1, tiles, star));
    CHECK(routing_feasible(b1, tiles, {star.begin(), star.begin() + 3}));
    const auto b3 = ChipLayout::uniform(m, 3, {3, 3}, 3);
    CHECK(routing_feasible(b3, tiles, star));
    const RoutingGraph g(b3, tiles);
    check_disjoint(g, star, route_batch_guaranteed(g, star));
  }
  CHECK(routing_feasible(ChipLayout::uniform(Model::DoubleDefect, 3, {3, 3}, 1), tiles, {}));
}

TEST_CASE("batch router preconditions") {
  const auto layout = ChipLayout::uniform(Model::DoubleDefect, 3, {3, 3}, 1);
  const RoutingGraph g(layout, all_tiles(3, 3));
  const Pairs four{{{0, 0}, {0, 1}}, {{0, 2}, {1, 2}}, {{1, 0}, {2, 0}}, {{2, 1}, {2, 2}}};
  CHECK_THROWS_AS(route_batch_guaranteed(g, four), ValidationError);
  const Pairs shared{{{0, 0}, {0, 1}}, {{0, 1}, {1, 1}}};
  CHECK_THROWS_AS(route_batch_guaranteed(g, shared), ValidationError);
  CHECK(route_batch_guaranteed(g, {}).empty());

  Occupancy occ(g);
  const auto single = route_batch_guaranteed(g, {{{0, 0}, {2, 2}}});
  REQUIRE(single.size() == 1);
  CHECK(single[0].length() == find_path(g, occ, {0, 0}, {2, 2})->length());
}

TEST_CASE("batch router on random placements") {
  Rng rng(2024);
  for (auto m : {Model::DoubleDefect, Model::LatticeSurgery}) {
    for (int b : {1, 3, 5}) {
      const int k = chip_capacity(b);
      for (int trial = 0; trial < 60; ++trial) {
        int rows, cols;
        do {
          rows = static_cast<int>(rng.uniform(3, 8));
          cols = static_cast<int>(rng.uniform(3, 8));
        } while (rows * cols < 2 * k);
        const auto layout = ChipLayout::uniform(m, 3, {rows, cols}, b);
        auto tiles = all_tiles(rows, cols);
        rng.shuffle(tiles);
        Pairs pairs;
        for (int i = 0; i < k; ++i) pairs.emplace_back(tiles[2 * i], tiles[2 * i + 1]);
        const RoutingGraph g(layout, tiles);
        check_disjoint(g, pairs, route_batch_guaranteed(g, pairs));
      }
    }
  }
}

TEST_CASE("terminals and coordinates") {
  const auto layout = ChipLayout::uniform(Model::DoubleDefect, 3, {2, 3}, 1);
  const RoutingGraph g(layout, all_tiles(2, 3));
  CHECK(g.terminals({0, 0}).size() == 4);
  CHECK(RoutingGraph::adjacent({0, 0}, {0, 1}));
  CHECK_FALSE(RoutingGraph::adjacent({0, 0}, {1, 1}));
  Occupancy occ(g);
  const auto p = find_path(g, occ, {0, 0}, {1, 2});
  REQUIRE(p);
  const auto pts = g.coordinates(*p);
  CHECK(pts.size() >= 2);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    CHECK(std::abs(pts[i][0] - pts[i - 1][0]) + std::abs(pts[i][1] - pts[i - 1][1]) == 1);
  }
  CHECK_FALSE(g.render({*p}).empty());
  CHECK_THROWS_AS(RoutingGraph(layout, {{2, 0}}), ValidationError);
}

TEST_CASE("lattice-surgery routes avoid data tiles but use empty slots") {
  const auto layout = ChipLayout::uniform(Model::LatticeSurgery, 3, {3, 3}, 1);
  std::vector<TileCoord> data = all_tiles(3, 3);
  const auto with_all = RoutingGraph(layout, data);
  data.erase(data.begin() + 4);  // free the centre slot
  const auto with_hole = RoutingGraph(layout, data);
  CHECK(with_hole.num_nodes() == with_all.num_nodes() + 1);
  CHECK(with_all.is_occupied({1, 1}));
  CHECK_FALSE(with_hole.is_occupied({1, 1}));
}
