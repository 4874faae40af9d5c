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

#include "surfc/router.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>

#include "surfc/error.hpp"
#include "surfc/rng.hpp"

namespace surfc {

std::vector<int> RoutePath::resources() const {
  std::vector<int> r = nodes;
  for (int v : vias)
    if (v >= 0) r.push_back(v);
  return r;
}

// ---------------------------------------------------------------------------
// RoutingGraph

RoutingGraph::RoutingGraph(const ChipLayout& layout, const std::vector<TileCoord>& occupied)
    : layout_(layout), occupied_(static_cast<std::size_t>(layout.rows() * layout.cols()), 0) {
  for (const auto& t : occupied) {
    if (t.row < 0 || t.col < 0 || t.row >= layout.rows() || t.col >= layout.cols()) {
      throw ValidationError("tile (" + std::to_string(t.row) + "," + std::to_string(t.col) +
                            ") lies outside the tile grid");
    }
    occupied_[static_cast<std::size_t>(t.row * layout.cols() + t.col)] = 1;
  }
  if (layout.model() == Model::DoubleDefect) {
    build_double_defect();
  } else {
    build_lattice_surgery();
  }
}

int RoutingGraph::add_node(int capacity, std::array<int, 2> a, std::array<int, 2> b) {
  arcs_.emplace_back();
  capacity_.push_back(capacity);
  end_a_.push_back(a);
  end_b_.push_back(b);
  return static_cast<int>(arcs_.size()) - 1;
}

void RoutingGraph::build_double_defect() {
  const int R = layout_.rows(), C = layout_.cols();
  hseg_.assign(static_cast<std::size_t>((R + 1) * C), -1);
  vseg_.assign(static_cast<std::size_t>(R * (C + 1)), -1);
  for (int i = 0; i <= R; ++i) {
    const int b = layout_.row_strip_bandwidth(i);
    if (b < 1) continue;
    for (int j = 0; j < C; ++j) hseg_[i * C + j] = add_node(b, {i, j}, {i, j + 1});
  }
  for (int j = 0; j <= C; ++j) {
    const int b = layout_.col_strip_bandwidth(j);
    if (b < 1) continue;
    for (int i = 0; i < R; ++i) vseg_[i * (C + 1) + j] = add_node(b, {i, j}, {i + 1, j});
  }
  const int nodes = num_nodes();
  auto h = [&](int i, int j) { return (i < 0 || i > R || j < 0 || j >= C) ? -1 : hseg_[i * C + j]; };
  auto v = [&](int i, int j) { return (i < 0 || i >= R || j < 0 || j > C) ? -1 : vseg_[i * (C + 1) + j]; };
  // Incident segments of junction (i, j) in N, E, S, W order.
  auto incident = [&](int i, int j) { return std::array<int, 4>{v(i - 1, j), h(i, j), v(i, j), h(i, j - 1)}; };
  junction_.assign(static_cast<std::size_t>((R + 1) * (C + 1)), -1);
  for (int i = 0; i <= R; ++i) {
    for (int j = 0; j <= C; ++j) {
      int cap = 0;
      for (int s : incident(i, j))
        if (s >= 0) cap = std::max(cap, capacity_[s]);
      junction_[i * (C + 1) + j] = nodes + i * (C + 1) + j;
      capacity_.push_back(cap);
    }
  }
  for (int s = 0; s < nodes; ++s) {
    for (const auto& end : {end_a_[s], end_b_[s]}) {
      const int via = junction_[end[0] * (C + 1) + end[1]];
      for (int t : incident(end[0], end[1]))
        if (t >= 0 && t != s) arcs_[s].push_back({t, via});
    }
  }
}

void RoutingGraph::build_lattice_surgery() {
  const int R = layout_.rows(), C = layout_.cols();
  std::vector<char> lane_row, lane_col;
  for (int i = 0; i <= R; ++i) {
    for (int k = 0; k < layout_.row_strip_bandwidth(i); ++k) {
      lane_row.push_back(1);
      strip_of_cell_row_.push_back(i);
    }
    if (i < R) {
      tile_row_cell_.push_back(static_cast<int>(lane_row.size()));
      lane_row.push_back(0);
      strip_of_cell_row_.push_back(-1);
    }
  }
  for (int j = 0; j <= C; ++j) {
    for (int k = 0; k < layout_.col_strip_bandwidth(j); ++k) {
      lane_col.push_back(1);
      strip_of_cell_col_.push_back(R + 1 + j);
    }
    if (j < C) {
      tile_col_cell_.push_back(static_cast<int>(lane_col.size()));
      lane_col.push_back(0);
      strip_of_cell_col_.push_back(-1);
    }
  }
  cell_rows_ = static_cast<int>(lane_row.size());
  cell_cols_ = static_cast<int>(lane_col.size());
  cell_node_.assign(static_cast<std::size_t>(cell_rows_ * cell_cols_), -1);
  std::vector<int> data_tile(static_cast<std::size_t>(cell_rows_ * cell_cols_), -1);
  for (int r = 0; r < R; ++r)
    for (int c = 0; c < C; ++c) data_tile[tile_row_cell_[r] * cell_cols_ + tile_col_cell_[c]] = r * C + c;
  for (int y = 0; y < cell_rows_; ++y) {
    for (int x = 0; x < cell_cols_; ++x) {
      const int t = data_tile[y * cell_cols_ + x];
      if (t >= 0 && occupied_[t]) continue;
      cell_node_[y * cell_cols_ + x] = add_node(1, {y, x}, {y, x});
    }
  }
  auto at = [&](int y, int x) {
    return (y < 0 || x < 0 || y >= cell_rows_ || x >= cell_cols_) ? -1 : cell_node_[y * cell_cols_ + x];
  };
  for (int y = 0; y < cell_rows_; ++y) {
    for (int x = 0; x < cell_cols_; ++x) {
      const int n = at(y, x);
      if (n < 0) continue;
      for (int m : {at(y - 1, x), at(y, x + 1), at(y + 1, x), at(y, x - 1)})
        if (m >= 0) arcs_[n].push_back({m, -1});
    }
  }
}

bool RoutingGraph::adjacent(TileCoord a, TileCoord b) {
  return std::abs(a.row - b.row) + std::abs(a.col - b.col) == 1;
}

bool RoutingGraph::is_occupied(TileCoord t) const {
  return occupied_[static_cast<std::size_t>(t.row * layout_.cols() + t.col)] != 0;
}

std::array<int, 2> RoutingGraph::tile_cell(TileCoord t) const {
  if (model() == Model::DoubleDefect) return {t.row, t.col};
  return {tile_row_cell_[t.row], tile_col_cell_[t.col]};
}

std::vector<int> RoutingGraph::terminals(TileCoord t) const {
  std::vector<int> out;
  if (t.row < 0 || t.col < 0 || t.row >= layout_.rows() || t.col >= layout_.cols()) return out;
  if (model() == Model::DoubleDefect) {
    const int C = layout_.cols();
    for (int s : {hseg_[t.row * C + t.col], vseg_[t.row * (C + 1) + t.col + 1], hseg_[(t.row + 1) * C + t.col],
                  vseg_[t.row * (C + 1) + t.col]}) {
      if (s >= 0) out.push_back(s);
    }
    return out;
  }
  const auto [y, x] = tile_cell(t);
  const std::array<std::array<int, 2>, 4> around{{{y - 1, x}, {y, x + 1}, {y + 1, x}, {y, x - 1}}};
  for (const auto& [cy, cx] : around) {
    if (cy < 0 || cx < 0 || cy >= cell_rows_ || cx >= cell_cols_) continue;
    const int n = cell_node_[cy * cell_cols_ + cx];
    if (n >= 0) out.push_back(n);
  }
  return out;
}

std::vector<std::array<int, 2>> RoutingGraph::coordinates(const RoutePath& path) const {
  std::vector<std::array<int, 2>> out;
  if (path.direct()) return out;
  if (model() == Model::LatticeSurgery) {
    for (int n : path.nodes) out.push_back(end_a_[n]);
    return out;
  }
  const int C = layout_.cols();
  auto junction_at = [&](int via) {
    const int idx = via - num_nodes();
    return std::array<int, 2>{idx / (C + 1), idx % (C + 1)};
  };
  if (path.length() == 1) return {end_a_[path.nodes[0]], end_b_[path.nodes[0]]};
  auto other = [&](int seg, std::array<int, 2> j) { return end_a_[seg] == j ? end_b_[seg] : end_a_[seg]; };
  out.push_back(other(path.nodes.front(), junction_at(path.vias.front())));
  for (int v : path.vias) out.push_back(junction_at(v));
  out.push_back(other(path.nodes.back(), junction_at(path.vias.back())));
  return out;
}

bool RoutingGraph::connects(const RoutePath& path, TileCoord a, TileCoord b) const {
  if (path.direct()) return model() == Model::LatticeSurgery && adjacent(a, b);
  if (path.vias.size() + 1 != path.nodes.size()) return false;
  for (int n : path.nodes)
    if (n < 0 || n >= num_nodes()) return false;
  const auto ta = terminals(a), tb = terminals(b);
  if (std::find(ta.begin(), ta.end(), path.nodes.front()) == ta.end()) return false;
  if (std::find(tb.begin(), tb.end(), path.nodes.back()) == tb.end()) return false;
  for (std::size_t k = 0; k + 1 < path.nodes.size(); ++k) {
    const auto& arcs = arcs_[path.nodes[k]];
    const bool ok = std::any_of(arcs.begin(), arcs.end(),
                                [&](const Arc& e) { return e.to == path.nodes[k + 1] && e.via == path.vias[k]; });
    if (!ok) return false;
  }
  return true;
}

std::vector<std::pair<int, int>> RoutingGraph::corridor_positions(int node) const {
  const auto& a = end_a_[node];
  const auto& b = end_b_[node];
  if (model() == Model::DoubleDefect) {
    if (a[0] == b[0]) return {{a[0], a[1]}};
    return {{layout_.rows() + 1 + a[1], a[0]}};
  }
  std::vector<std::pair<int, int>> out;
  if (strip_of_cell_row_[a[0]] >= 0) out.push_back({strip_of_cell_row_[a[0]], a[1]});
  if (strip_of_cell_col_[a[1]] >= 0) out.push_back({strip_of_cell_col_[a[1]], a[0]});
  return out;
}

std::string RoutingGraph::render(const std::vector<RoutePath>& routes) const {
  std::vector<std::string> canvas;
  if (model() == Model::DoubleDefect) {
    const int R = layout_.rows(), C = layout_.cols();
    canvas.assign(static_cast<std::size_t>(2 * R + 1), std::string(static_cast<std::size_t>(2 * C + 1), ' '));
    for (int i = 0; i <= R; ++i)
      for (int j = 0; j <= C; ++j) canvas[2 * i][2 * j] = '+';
    for (int i = 0; i < R; ++i)
      for (int j = 0; j < C; ++j) canvas[2 * i + 1][2 * j + 1] = is_occupied({i, j}) ? '#' : 'o';
    std::vector<std::array<int, 2>> pos(static_cast<std::size_t>(num_resources()));
    for (int n = 0; n < num_nodes(); ++n) {
      const auto& a = end_a_[n];
      const auto& b = end_b_[n];
      pos[n] = {a[0] + b[0], a[1] + b[1]};
      canvas[pos[n][0]][pos[n][1]] = a[0] == b[0] ? '-' : '|';
    }
    for (int i = 0; i <= R; ++i)
      for (int j = 0; j <= C; ++j) pos[junction_[i * (C + 1) + j]] = {2 * i, 2 * j};
    for (std::size_t k = 0; k < routes.size(); ++k)
      for (int r : routes[k].resources()) canvas[pos[r][0]][pos[r][1]] = static_cast<char>('a' + k % 26);
  } else {
    canvas.assign(static_cast<std::size_t>(cell_rows_), std::string(static_cast<std::size_t>(cell_cols_), ' '));
    for (int y = 0; y < cell_rows_; ++y)
      for (int x = 0; x < cell_cols_; ++x) canvas[y][x] = cell_node_[y * cell_cols_ + x] >= 0 ? '.' : ' ';
    for (int r = 0; r < layout_.rows(); ++r)
      for (int c = 0; c < layout_.cols(); ++c)
        if (is_occupied({r, c})) canvas[tile_row_cell_[r]][tile_col_cell_[c]] = '#';
    for (std::size_t k = 0; k < routes.size(); ++k)
      for (int n : routes[k].nodes) canvas[end_a_[n][0]][end_a_[n][1]] = static_cast<char>('a' + k % 26);
  }
  std::string out;
  for (const auto& line : canvas) out += line + '\n';
  return out;
}

// ---------------------------------------------------------------------------
// Occupancy

Occupancy::Occupancy(const RoutingGraph& graph) : graph_(&graph), cols_(graph.layout().cols()) {}

int Occupancy::used(int resource, int cycle) const {
  if (cycle < 0 || cycle >= static_cast<int>(used_.size())) return 0;
  return used_[cycle][resource];
}

int& Occupancy::slot(int resource, int cycle) {
  if (cycle < 0) throw std::logic_error("negative cycle");
  while (static_cast<int>(used_.size()) <= cycle) used_.emplace_back(graph_->num_resources(), 0);
  return used_[cycle][resource];
}

bool Occupancy::resource_free(int resource, int cycle, int duration) const {
  for (int t = cycle; t < cycle + duration; ++t)
    if (used(resource, t) >= graph_->capacity(resource)) return false;
  return true;
}

bool Occupancy::path_free(const RoutePath& path, int cycle, int duration) const {
  // Counted as a multiset so a route crossing one resource twice is honest.
  auto res = path.resources();
  std::sort(res.begin(), res.end());
  for (std::size_t i = 0; i < res.size();) {
    std::size_t j = i;
    while (j < res.size() && res[j] == res[i]) ++j;
    const int need = static_cast<int>(j - i);
    for (int t = cycle; t < cycle + duration; ++t)
      if (used(res[i], t) + need > graph_->capacity(res[i])) return false;
    i = j;
  }
  return true;
}

bool Occupancy::tile_free(TileCoord tile, int cycle, int duration) const {
  const int idx = tile.row * cols_ + tile.col;
  for (int t = cycle; t < cycle + duration; ++t) {
    if (t < static_cast<int>(tile_busy_.size()) && tile_busy_[t][idx]) return false;
  }
  return true;
}

void Occupancy::commit(const RoutePath& path, int cycle, int duration) {
  if (!path_free(path, cycle, duration)) throw std::logic_error("route committed over a saturated resource");
  for (int r : path.resources())
    for (int t = cycle; t < cycle + duration; ++t) ++slot(r, t);
}

void Occupancy::release(const RoutePath& path, int cycle, int duration) {
  for (int r : path.resources()) {
    for (int t = cycle; t < cycle + duration; ++t) {
      int& u = slot(r, t);
      if (u <= 0) throw std::logic_error("releasing a resource that is not held");
      --u;
    }
  }
}

void Occupancy::reserve_tile(TileCoord tile, int cycle, int duration) {
  const int idx = tile.row * cols_ + tile.col;
  const auto tiles = static_cast<std::size_t>(graph_->layout().rows() * cols_);
  for (int t = cycle; t < cycle + duration; ++t) {
    while (static_cast<int>(tile_busy_.size()) <= t) tile_busy_.emplace_back(tiles, 0);
    if (tile_busy_[t][idx]) throw std::logic_error("tile reserved twice in one cycle");
    tile_busy_[t][idx] = 1;
  }
}

// ---------------------------------------------------------------------------
// Path search

namespace {

RoutePath trace(const std::vector<int>& parent, const std::vector<int>& parent_via, int end) {
  RoutePath p;
  for (int n = end; n >= 0; n = parent[n]) {
    p.nodes.push_back(n);
    if (parent[n] >= 0) p.vias.push_back(parent_via[n]);
  }
  std::reverse(p.nodes.begin(), p.nodes.end());
  std::reverse(p.vias.begin(), p.vias.end());
  return p;
}

}  // namespace

std::optional<RoutePath> find_path(const RoutingGraph& graph, const Occupancy& occupancy, TileCoord a, TileCoord b,
                                   int cycle, int duration) {
  if (graph.model() == Model::LatticeSurgery && RoutingGraph::adjacent(a, b)) return RoutePath{};
  const int n = graph.num_nodes();
  std::vector<char> goal(static_cast<std::size_t>(n), 0);
  for (int t : graph.terminals(b)) goal[t] = 1;
  std::vector<int> parent(static_cast<std::size_t>(n), -1), parent_via(static_cast<std::size_t>(n), -1);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::deque<int> queue;
  for (int s : graph.terminals(a)) {
    if (seen[s] || !occupancy.resource_free(s, cycle, duration)) continue;
    seen[s] = 1;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (goal[u]) return trace(parent, parent_via, u);
    for (const auto& e : graph.arcs(u)) {
      if (seen[e.to] || !occupancy.resource_free(e.to, cycle, duration)) continue;
      if (e.via >= 0 && !occupancy.resource_free(e.via, cycle, duration)) continue;
      seen[e.to] = 1;
      parent[e.to] = u;
      parent_via[e.to] = e.via;
      queue.push_back(e.to);
    }
  }
  return std::nullopt;
}

std::vector<RoutePath> enumerate_routes(const RoutingGraph& graph, TileCoord a, TileCoord b, int max_length) {
  std::vector<RoutePath> out;
  if (graph.model() == Model::LatticeSurgery && RoutingGraph::adjacent(a, b)) return {RoutePath{}};
  const auto ta = graph.terminals(a), tb = graph.terminals(b);
  std::vector<char> start(static_cast<std::size_t>(graph.num_nodes()), 0), goal(start.size(), 0);
  for (int t : ta) start[t] = 1;
  for (int t : tb) goal[t] = 1;
  std::vector<char> used(static_cast<std::size_t>(graph.num_resources()), 0);
  RoutePath cur;
  std::function<void(int)> dfs = [&](int u) {
    if (goal[u]) {
      out.push_back(cur);
      return;
    }
    if (cur.length() >= max_length) return;
    for (const auto& e : graph.arcs(u)) {
      if (used[e.to] || start[e.to] || (e.via >= 0 && used[e.via])) continue;
      used[e.to] = 1;
      if (e.via >= 0) used[e.via] = 1;
      cur.nodes.push_back(e.to);
      cur.vias.push_back(e.via);
      dfs(e.to);
      cur.nodes.pop_back();
      cur.vias.pop_back();
      used[e.to] = 0;
      if (e.via >= 0) used[e.via] = 0;
    }
  };
  for (int s : ta) {
    used[s] = 1;
    cur.nodes.assign(1, s);
    cur.vias.clear();
    dfs(s);
    used[s] = 0;
  }
  return out;
}

namespace {

using Pairs = std::vector<std::pair<TileCoord, TileCoord>>;

// 0-1 BFS: the route crossing the fewest saturated resources. Its saturated
// resources form the cheapest cut through the ring separating the pair.
std::optional<RoutePath> least_blocked_path(const RoutingGraph& graph, const Occupancy& occ, TileCoord a,
                                            TileCoord b, Rng& rng) {
  const int n = graph.num_nodes();
  const int inf = std::numeric_limits<int>::max();
  std::vector<int> dist(static_cast<std::size_t>(n), inf), parent(dist.size(), -1), parent_via(dist.size(), -1);
  std::vector<char> goal(dist.size(), 0);
  for (int t : graph.terminals(b)) goal[t] = 1;
  auto cost = [&](int r) { return (r >= 0 && !occ.resource_free(r, 0)) ? 1 : 0; };
  std::deque<int> dq;
  auto sources = graph.terminals(a);
  rng.shuffle(sources);
  for (int s : sources) {
    const int c = cost(s);
    if (c < dist[s]) {
      dist[s] = c;
      c ? dq.push_back(s) : dq.push_front(s);
    }
  }
  std::vector<char> done(dist.size(), 0);
  while (!dq.empty()) {
    const int u = dq.front();
    dq.pop_front();
    if (done[u]) continue;
    done[u] = 1;
    auto arcs = graph.arcs(u);
    rng.shuffle(arcs);
    for (const auto& e : arcs) {
      const int c = cost(e.to) + cost(e.via);
      if (dist[u] + c < dist[e.to]) {
        dist[e.to] = dist[u] + c;
        parent[e.to] = u;
        parent_via[e.to] = e.via;
        c ? dq.push_back(e.to) : dq.push_front(e.to);
      }
    }
  }
  int best = -1;
  for (int t = 0; t < n; ++t)
    if (goal[t] && dist[t] != inf && (best < 0 || dist[t] < dist[best])) best = t;
  if (best < 0) return std::nullopt;
  return trace(parent, parent_via, best);
}

bool rip_up_and_reroute(const RoutingGraph& graph, const Pairs& pairs, std::vector<int> order, Rng& rng,
                        std::vector<RoutePath>& result) {
  Occupancy occ(graph);
  std::vector<std::optional<RoutePath>> routes(pairs.size());
  std::deque<int> pending;
  for (int g : order) {
    auto p = find_path(graph, occ, pairs[g].first, pairs[g].second);
    if (p) {
      occ.commit(*p, 0);
      routes[g] = std::move(p);
    } else {
      pending.push_back(g);
    }
  }
  const int limit = 40 * static_cast<int>(pairs.size()) + 40;
  for (int it = 0; !pending.empty() && it < limit; ++it) {
    const int g = pending.front();
    pending.pop_front();
    if (auto p = find_path(graph, occ, pairs[g].first, pairs[g].second)) {
      occ.commit(*p, 0);
      routes[g] = std::move(p);
      continue;
    }
    auto q = least_blocked_path(graph, occ, pairs[g].first, pairs[g].second, rng);
    if (!q) return false;  // no route even on an empty fabric
    std::set<int> saturated;
    for (int r : q->resources())
      if (!occ.resource_free(r, 0)) saturated.insert(r);
    std::vector<int> blockers;
    for (std::size_t h = 0; h < routes.size(); ++h) {
      if (!routes[h]) continue;
      const auto res = routes[h]->resources();
      if (std::any_of(res.begin(), res.end(), [&](int r) { return saturated.count(r) > 0; }))
        blockers.push_back(static_cast<int>(h));
    }
    rng.shuffle(blockers);
    for (int h : blockers) {
      // One released route per saturated resource suffices.
      bool needed = false;
      for (int r : routes[h]->resources())
        if (saturated.count(r) && !occ.resource_free(r, 0)) needed = true;
      if (!needed) continue;
      occ.release(*routes[h], 0);
      routes[h].reset();
      pending.push_back(h);
    }
    if (!occ.path_free(*q, 0)) {
      pending.push_back(g);
      continue;
    }
    occ.commit(*q, 0);
    routes[g] = std::move(q);
  }
  if (!pending.empty()) return false;
  result.clear();
  for (auto& r : routes) result.push_back(std::move(*r));
  return true;
}

// Negotiated congestion: everyone routes with shared-resource penalties that
// grow until no resource is overused.
bool negotiated_congestion(const RoutingGraph& graph, const Pairs& pairs, std::vector<RoutePath>& result) {
  const int R = graph.num_resources();
  std::vector<double> history(static_cast<std::size_t>(R), 0.0);
  std::vector<RoutePath> routes(pairs.size());
  double pressure = 0.5;
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<int> usage(static_cast<std::size_t>(R), 0);
    for (std::size_t g = 0; g < pairs.size(); ++g) {
      const auto [a, b] = pairs[g];
      if (graph.model() == Model::LatticeSurgery && RoutingGraph::adjacent(a, b)) {
        routes[g] = RoutePath{};
        continue;
      }
      auto cost = [&](int r) {
        if (r < 0) return 0.0;
        const int over = std::max(0, usage[r] + 1 - graph.capacity(r));
        return (1.0 + history[r]) * (1.0 + pressure * over);
      };
      const int n = graph.num_nodes();
      std::vector<double> dist(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
      std::vector<int> parent(dist.size(), -1), parent_via(dist.size(), -1);
      std::vector<char> goal(dist.size(), 0);
      for (int t : graph.terminals(b)) goal[t] = 1;
      using Item = std::pair<double, int>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
      for (int s : graph.terminals(a)) {
        if (cost(s) < dist[s]) {
          dist[s] = cost(s);
          pq.push({dist[s], s});
        }
      }
      int hit = -1;
      while (!pq.empty()) {
        const auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        if (goal[u]) {
          hit = u;
          break;
        }
        for (const auto& e : graph.arcs(u)) {
          const double nd = d + cost(e.to) + cost(e.via);
          if (nd < dist[e.to]) {
            dist[e.to] = nd;
            parent[e.to] = u;
            parent_via[e.to] = e.via;
            pq.push({nd, e.to});
          }
        }
      }
      if (hit < 0) return false;
      routes[g] = trace(parent, parent_via, hit);
      for (int r : routes[g].resources()) ++usage[r];
    }
    bool overused = false;
    for (int r = 0; r < R; ++r) {
      const int over = usage[r] - graph.capacity(r);
      if (over > 0) {
        overused = true;
        history[r] += over;
      }
    }
    if (!overused) {
      result = routes;
      return true;
    }
    pressure *= 1.6;
  }
  return false;
}

bool backtrack(const RoutingGraph& graph, const Pairs& pairs, std::vector<RoutePath>& result) {
  std::vector<std::vector<RoutePath>> options;
  for (const auto& [a, b] : pairs) {
    auto routes = enumerate_routes(graph, a, b, 4 * (graph.layout().rows() + graph.layout().cols()) + 4);
    std::stable_sort(routes.begin(), routes.end(),
                     [](const RoutePath& x, const RoutePath& y) { return x.length() < y.length(); });
    options.push_back(std::move(routes));
  }
  Occupancy occ(graph);
  std::vector<RoutePath> chosen(pairs.size());
  long budget = 2'000'000;
  std::function<bool(std::size_t)> go = [&](std::size_t g) {
    if (g == pairs.size()) return true;
    for (const auto& r : options[g]) {
      if (--budget < 0) return false;
      if (!occ.path_free(r, 0)) continue;
      occ.commit(r, 0);
      chosen[g] = r;
      if (go(g + 1)) return true;
      occ.release(r, 0);
    }
    return false;
  };
  if (!go(0)) return false;
  result = chosen;
  return true;
}

}  // namespace

std::vector<RoutePath> route_batch_guaranteed(const RoutingGraph& graph, const Pairs& pairs) {
  std::set<TileCoord> tiles;
  for (const auto& [a, b] : pairs) {
    if (!tiles.insert(a).second || !tiles.insert(b).second || a == b) {
      throw ValidationError("route_batch_guaranteed: gates must act on pairwise distinct tiles");
    }
  }
  const int cap = graph.layout().capacity();
  if (static_cast<int>(pairs.size()) > cap) {
    throw ValidationError("route_batch_guaranteed: " + std::to_string(pairs.size()) +
                          " gates exceed the chip capacity " + std::to_string(cap));
  }
  if (pairs.empty()) return {};
  std::vector<int> order(pairs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::vector<RoutePath> result;
  Rng rng(0x5eed);
  for (int attempt = 0; attempt < 24; ++attempt) {
    if (rip_up_and_reroute(graph, pairs, order, rng, result)) return result;
    rng.shuffle(order);
  }
  if (negotiated_congestion(graph, pairs, result)) return result;
  if (graph.num_nodes() <= 48 && backtrack(graph, pairs, result)) return result;
  throw std::logic_error("route_batch_guaranteed: no simultaneous routing found within the capacity bound");
}

}  // namespace surfc
