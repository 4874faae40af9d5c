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

#include <algorithm>
#include <cmath>

#include "surfc/error.hpp"
#include "surfc/generators.hpp"
#include "surfc/oracle.hpp"
#include "surfc/placement.hpp"
#include "surfc/profiler.hpp"
#include "surfc/scheduler.hpp"
#include "test_util.hpp"

using namespace surfc;
using surfc::testing::random_gates;

namespace {

bool has_violation(const std::vector<std::string>& errs, const std::string& needle) {
  return std::any_of(errs.begin(), errs.end(), [&](const std::string& e) { return e.find(needle) != std::string::npos; });
}

int count_kind(const EncodedSchedule& s, ActionKind kind) {
  int k = 0;
  for (const auto& c : s.cycles)
    for (const auto& a : c.actions) k += a.kind == kind;
  return k;
}

struct Fixture {
  LogicalCircuit circuit;
  ChipLayout layout;
  TileMapping mapping;
};

Fixture single_cnot(Model model) {
  LogicalCircuit c(2);
  c.add_cnot(0, 1);
  return {c, ChipLayout::uniform(model, 3, {1, 2}, 1), TileMapping({1, 2}, {{0, 0}, {0, 1}})};
}

void check_schedule(const EncodedSchedule& s, const Fixture& f) {
  const auto errs = validate(s, f.circuit, f.layout, f.mapping);
  for (const auto& e : errs) INFO(e);
  CHECK(errs.empty());
  CHECK(s.delta() >= para_finding(GateDag(f.circuit)).length());
}

}  // namespace

TEST_CASE("gate priorities") {
  LogicalCircuit chain(2);
  for (int i = 0; i < 5; ++i) chain.add_cnot(0, 1);
  const GateDag cd(chain);
  CHECK(gate_priority(cd, 0).criticality == 5);
  CHECK(gate_priority(cd, 0).remaining == 5);
  CHECK(gate_priority(cd, 4).criticality == 1);
  CHECK(gate_priority(cd, 4).remaining == 1);

  LogicalCircuit diamond(4);
  diamond.add_cnot(0, 1);
  diamond.add_cnot(0, 2);
  diamond.add_cnot(1, 3);
  diamond.add_cnot(2, 3);
  const GateDag dd(diamond);
  CHECK(gate_priority(dd, 0).criticality == 3);
  CHECK(gate_priority(dd, 0).remaining == 4);
  const auto all = gate_priorities(dd);
  for (GateId id = 0; id < 4; ++id) {
    CHECK(all[id].criticality == gate_priority(dd, id).criticality);
    CHECK(all[id].remaining == gate_priority(dd, id).remaining);
    CHECK(all[id].criticality >= 1);
  }
}

TEST_CASE("m-value") {
  CHECK(pressure_weight(6, 4, 10) == doctest::Approx(30.0));
  CHECK(pressure_weight(0, 4, 10) == 0.0);
  CHECK(pressure_weight(3, 0, 10) == 0.0);

  const auto idle = m_value(5, 0, 0, 8, 4);
  CHECK(idle.m_t == -2.0);
  CHECK(idle.value() < 0);

  const auto fresh = m_value(0, 0, 0, 8, 4);
  CHECK(fresh.m_t == 1.0);
  CHECK(fresh.theta == 0.0);
  CHECK(fresh.value() == 1.0);

  const auto busy = m_value(0, 0, 6, 4, 10);
  CHECK(busy.theta == doctest::Approx(30.0));
  CHECK(busy.m_s == -1.0);
  CHECK(busy.value() == doctest::Approx(-29.0));

  CHECK(m_value(0, 2, 0, 4, 4).m_s == 1.0);
  for (int i = 0; i < 20; ++i) CHECK(m_value(i % 5, i % 3 - 1, i, 1 + i % 4, 2 + i).theta >= 0.0);
}

TEST_CASE("single cnot, opposite cuts") {
  for (Model model : {Model::DoubleDefect, Model::LatticeSurgery}) {
    const auto f = single_cnot(model);
    const auto s = schedule_limited(f.circuit, f.layout, f.mapping, {CutType::X, CutType::Z});
    CHECK(s.delta() == 1);
    check_schedule(s, f);
  }
}

TEST_CASE("single cnot, same cuts") {
  const auto f = single_cnot(Model::DoubleDefect);
  const CutAssignment same{CutType::X, CutType::X};
  const auto ecmas = schedule_limited(f.circuit, f.layout, f.mapping, same);
  CHECK(ecmas.delta() == 3);
  CHECK(count_kind(ecmas, ActionKind::DirectSameCut) == 3);
  check_schedule(ecmas, f);

  const auto tf = baseline_schedule(BaselineScheduler::TimeFirst, f.circuit, f.layout, f.mapping, same);
  CHECK(tf.delta() == 3);
  CHECK(count_kind(tf, ActionKind::CutModify) == 0);
  check_schedule(tf, f);

  const auto cf = baseline_schedule(BaselineScheduler::ChannelFirst, f.circuit, f.layout, f.mapping, same);
  CHECK(cf.delta() == 4);
  CHECK(count_kind(cf, ActionKind::CutModify) == 3);
  CHECK(count_kind(cf, ActionKind::BraidCnot) == 1);
  check_schedule(cf, f);
}

TEST_CASE("ghz chain") {
  const auto c = ghz_circuit(23);
  const auto [m1, m2] = config_dims(ChipConfig::parse("min"), 23, 3, Model::LatticeSurgery);
  const ChipSpec ls{Model::LatticeSurgery, m1, m2, 3};
  const auto shape = determine_shape(23, max_tile_grid(ls));
  const Fixture f{c, derive_layout(ls, shape), establish_mapping(CommGraph(c), shape)};
  const auto s = schedule_limited(c, f.layout, f.mapping, init_cut_types(c));
  CHECK(s.delta() == 22);
  check_schedule(s, f);
}

TEST_CASE("independent gates ignore priority order") {
  LogicalCircuit c(6);
  c.add_cnot(0, 1);
  c.add_cnot(2, 3);
  c.add_cnot(4, 5);
  const Fixture f{c, ChipLayout::uniform(Model::DoubleDefect, 3, {2, 3}, 2),
                  TileMapping({2, 3}, {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0, 2}, {1, 2}})};
  const auto cuts = init_cut_types(c);
  const auto a = schedule_limited(c, f.layout, f.mapping, cuts);
  const auto b = baseline_schedule(BaselineScheduler::CircuitOrder, c, f.layout, f.mapping, cuts);
  CHECK(a.delta() == b.delta());
  CHECK(a.delta() == 1);
}

TEST_CASE("unroutable gate is reported") {
  LogicalCircuit c(2);
  c.add_cnot(0, 1);
  const auto layout = ChipLayout::uniform(Model::DoubleDefect, 3, {1, 2}, 0);
  const TileMapping m({1, 2}, {{0, 0}, {0, 1}});
  CHECK_THROWS_WITH_AS(schedule_limited(c, layout, m, {CutType::X, CutType::Z}), doctest::Contains("gate 0"),
                       InfeasibleError);
}

TEST_CASE("validator flags a child before its parent") {
  LogicalCircuit c(2);
  c.add_cnot(0, 1);
  c.add_cnot(0, 1);
  const auto f = Fixture{c, ChipLayout::uniform(Model::DoubleDefect, 3, {1, 2}, 1), TileMapping({1, 2}, {{0, 0}, {0, 1}})};
  const RoutingGraph graph(f.layout, f.mapping.tiles());
  const auto route = find_path(graph, Occupancy(graph), {0, 0}, {0, 1});
  REQUIRE(route);
  EncodedSchedule s;
  s.initial_cuts = {CutType::X, CutType::Z};
  s.add(0, {ActionKind::BraidCnot, 1, -1, CutType::X, *route, 1});
  s.add(1, {ActionKind::BraidCnot, 0, -1, CutType::X, *route, 1});
  CHECK(has_violation(validate(s, c, f.layout, f.mapping), "before parent gate 0"));

  EncodedSchedule ok;
  ok.initial_cuts = s.initial_cuts;
  ok.add(0, {ActionKind::BraidCnot, 0, -1, CutType::X, *route, 1});
  ok.add(1, {ActionKind::BraidCnot, 1, -1, CutType::X, *route, 1});
  CHECK(validate(ok, c, f.layout, f.mapping).empty());

  EncodedSchedule missing;
  missing.initial_cuts = s.initial_cuts;
  missing.add(0, {ActionKind::BraidCnot, 0, -1, CutType::X, *route, 1});
  CHECK(has_violation(validate(missing, c, f.layout, f.mapping), "gate 1 never executed"));
}

TEST_CASE("validator flags two routes on a one-lane channel") {
  LogicalCircuit c(4);
  c.add_cnot(0, 2);
  c.add_cnot(1, 3);
  const auto layout = ChipLayout::uniform(Model::DoubleDefect, 3, {1, 4}, 1);
  const TileMapping m({1, 4}, {{0, 0}, {0, 1}, {0, 2}, {0, 3}});
  const RoutingGraph graph(layout, m.tiles());
  const Occupancy idle(graph);
  const auto ra = find_path(graph, idle, {0, 0}, {0, 2});
  const auto rb = find_path(graph, idle, {0, 1}, {0, 3});
  REQUIRE(ra);
  REQUIRE(rb);
  auto shared = ra->resources();
  const auto other = rb->resources();
  REQUIRE(std::any_of(shared.begin(), shared.end(),
                      [&](int r) { return std::find(other.begin(), other.end(), r) != other.end(); }));
  EncodedSchedule s;
  s.initial_cuts = {CutType::X, CutType::X, CutType::Z, CutType::Z};
  s.add(0, {ActionKind::BraidCnot, 0, -1, CutType::X, *ra, 1});
  s.add(0, {ActionKind::BraidCnot, 1, -1, CutType::X, *rb, 1});
  CHECK(has_violation(validate(s, c, layout, m), "over capacity 1"));

  s.initial_cuts = {CutType::X, CutType::X, CutType::X, CutType::Z};
  CHECK(has_violation(validate(s, c, layout, m), "braided between equal cuts"));
}

TEST_CASE("validator checks three-cycle contiguity") {
  const auto f = single_cnot(Model::DoubleDefect);
  const RoutingGraph graph(f.layout, f.mapping.tiles());
  const auto route = find_path(graph, Occupancy(graph), {0, 0}, {0, 1});
  REQUIRE(route);
  EncodedSchedule s;
  s.initial_cuts = {CutType::X, CutType::X};
  s.add(0, {ActionKind::DirectSameCut, 0, -1, CutType::X, *route, 1});
  s.add(1, {ActionKind::DirectSameCut, 0, -1, CutType::X, *route, 2});
  s.add(3, {ActionKind::DirectSameCut, 0, -1, CutType::X, *route, 3});
  CHECK(has_violation(validate(s, f.circuit, f.layout, f.mapping), "not contiguous"));
}

TEST_CASE("bipartite prefix") {
  LogicalCircuit path(4);
  path.add_cnot(0, 1);
  path.add_cnot(1, 2);
  path.add_cnot(2, 3);
  const std::vector<std::vector<GateId>> path_layers{{0}, {1}, {2}};
  const auto p = bipartite_prefix(path, path_layers, 0);
  CHECK(p.end == 3);
  for (const auto& g : path.gates()) CHECK(p.colour[g.control] != p.colour[g.target]);

  LogicalCircuit ring(3);
  ring.add_cnot(0, 1);
  ring.add_cnot(1, 2);
  ring.add_cnot(0, 2);
  const std::vector<std::vector<GateId>> ring_layers{{0}, {1}, {2}};
  CHECK(bipartite_prefix(ring, ring_layers, 0).end == 2);
  CHECK(bipartite_prefix(ring, ring_layers, 2).end == 3);
}

TEST_CASE("sufficient scheduling") {
  SUBCASE("two layers need no remap") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      const auto c = gen_random_circuit(8, 2, 3, seed);
      const auto layers = para_finding(GateDag(c));
      const Fixture f{c, ChipLayout::uniform(Model::DoubleDefect, 3, {3, 3}, 1), establish_mapping(CommGraph(c), {3, 3})};
      const auto s = schedule_sufficient(c, layers, f.layout, f.mapping);
      CHECK(s.delta() == layers.length());
      CHECK(count_kind(s, ActionKind::CutModify) == 0);
      check_schedule(s, f);
    }
  }
  SUBCASE("lattice surgery runs one layer per cycle") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      const auto c = random_gates(9, 18, seed);
      const auto layers = para_finding(GateDag(c));
      const int b = std::max(1, 2 * layers.pmax() - 5);
      const Fixture f{c, ChipLayout::uniform(Model::LatticeSurgery, 3, {3, 3}, b), establish_mapping(CommGraph(c), {3, 3})};
      const auto s = schedule_sufficient(c, layers, f.layout, f.mapping);
      CHECK(s.delta() == layers.length());
      check_schedule(s, f);
    }
  }
  SUBCASE("bipartite circuits never remap") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      LogicalCircuit c(8);
      const auto pool = random_gates(8, 16, seed);
      for (const auto& g : pool.gates())
        if (g.control % 2 != g.target % 2) c.add_cnot(g.control, g.target);
      const auto layers = para_finding(GateDag(c));
      const Fixture f{c, ChipLayout::uniform(Model::DoubleDefect, 3, {3, 3}, 3), establish_mapping(CommGraph(c), {3, 3})};
      const auto s = schedule_sufficient(c, layers, f.layout, f.mapping);
      CHECK(count_kind(s, ActionKind::CutModify) == 0);
      CHECK(s.delta() == layers.length());
      check_schedule(s, f);
    }
  }
  SUBCASE("triangle needs one remap") {
    LogicalCircuit c(3);
    c.add_cnot(0, 1);
    c.add_cnot(1, 2);
    c.add_cnot(0, 2);
    const Fixture f{c, ChipLayout::uniform(Model::DoubleDefect, 3, {2, 2}, 1), TileMapping({2, 2}, {{0, 0}, {0, 1}, {1, 0}})};
    const auto s = schedule_sufficient(c, para_finding(GateDag(c)), f.layout, f.mapping);
    CHECK(s.delta() == 6);
    check_schedule(s, f);
  }
  SUBCASE("precondition") {
    LogicalCircuit c(8);
    for (int i = 0; i < 4; ++i) c.add_cnot(2 * i, 2 * i + 1);
    const auto layout = ChipLayout::uniform(Model::DoubleDefect, 3, {3, 3}, 0);
    CHECK_THROWS_AS(schedule_sufficient(c, para_finding(GateDag(c)), layout, establish_mapping(CommGraph(c), {3, 3})),
                    InfeasibleError);
  }
}

TEST_CASE("two consecutive layers always fit one bipartite segment") {
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    const auto c = random_gates(4 + static_cast<int>(seed % 9), 12, seed);
    const auto layers = para_finding(GateDag(c)).layers;
    for (int start = 0; start + 1 < static_cast<int>(layers.size()); ++start) {
      CAPTURE(seed);
      CHECK(bipartite_prefix(c, layers, start).end >= start + 2);
    }
  }
}

TEST_CASE("heuristics never beat the oracle") {
  OracleBudget budget;
  budget.time_limit_seconds = 30;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Model model = seed % 2 ? Model::DoubleDefect : Model::LatticeSurgery;
    const int n = 2 + static_cast<int>(seed % 4);
    const auto c = random_gates(n, 1 + static_cast<int>(seed % 6), seed);
    const Fixture f{c, ChipLayout::uniform(model, 3, {2, 3}, 1), establish_mapping(CommGraph(c), {2, 3})};
    const auto cuts = init_cut_types(c);
    const auto heuristic = schedule_limited(c, f.layout, f.mapping, cuts);
    check_schedule(heuristic, f);
    CAPTURE(seed);
    CHECK(optimal_cycles(c, f.layout, f.mapping, cuts, budget) <= heuristic.delta());
    const auto resu = schedule_sufficient(c, para_finding(GateDag(c)), f.layout, f.mapping);
    check_schedule(resu, f);
    const int opt = optimal_cycles(c, f.layout, f.mapping, {}, budget);
    CHECK(resu.delta() <= static_cast<int>(std::ceil(2.5 * opt)));
  }
}

TEST_CASE("every variant emits valid schedules") {
  const std::vector<SchedulerVariant> variants{SchedulerVariant::Ecmas, SchedulerVariant::CircuitOrder,
                                               SchedulerVariant::TimeFirst, SchedulerVariant::ChannelFirst};
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const Model model = seed % 2 ? Model::DoubleDefect : Model::LatticeSurgery;
    const int n = 6 + static_cast<int>(seed % 10);
    const auto c = gen_random_circuit(n, 8, 3, seed);
    const auto [m1, m2] = config_dims(ChipConfig::parse(seed % 3 ? (model == Model::DoubleDefect ? "min" : "bw1") : "4x"), n, 3, model);
    const ChipSpec spec{model, m1, m2, 3};
    const auto shape = determine_shape(n, max_tile_grid(spec));
    const auto layout = derive_layout(spec, shape);
    const CommGraph comm(c);
    MappingOptions o;
    if (model == Model::LatticeSurgery) o.penalty = [&](const TileMapping& m) { return unroutable_pairs(layout, m, comm); };
    const Fixture f{c, layout, establish_mapping(comm, shape, o)};
    const auto cuts = init_cut_types(c);
    for (auto v : variants) {
      if (model == Model::LatticeSurgery && (v == SchedulerVariant::TimeFirst || v == SchedulerVariant::ChannelFirst))
        continue;
      CAPTURE(seed);
      check_schedule(schedule_limited(c, f.layout, f.mapping, cuts, {v}), f);
    }
  }
}

TEST_CASE("schedule json") {
  const auto f = single_cnot(Model::DoubleDefect);
  const auto s = schedule_limited(f.circuit, f.layout, f.mapping, {CutType::X, CutType::Z});
  const auto j = s.to_json(RoutingGraph(f.layout, f.mapping.tiles()));
  CHECK(j["delta"] == 1);
  CHECK(j["cycles"][0]["index"] == 0);
  CHECK(j["cycles"][0]["actions"][0]["kind"] == to_string(ActionKind::BraidCnot));
  CHECK(j["cycles"][0]["actions"][0]["gate"] == 0);
}
