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

#include <algorithm>
#include <map>
#include <optional>

#include "surfc/error.hpp"
#include "surfc/scheduler.hpp"

namespace surfc {

std::string to_string(ActionKind k) {
  switch (k) {
    case ActionKind::BraidCnot: return "braid";
    case ActionKind::BellCnot: return "bell";
    case ActionKind::DirectSameCut: return "direct";
    case ActionKind::CutModify: return "modify";
  }
  return "?";
}

void EncodedSchedule::add(int cycle, Action action) {
  if (cycle < 0) throw std::logic_error("action placed at a negative cycle");
  if (static_cast<int>(cycles.size()) <= cycle) cycles.resize(static_cast<std::size_t>(cycle) + 1);
  cycles[static_cast<std::size_t>(cycle)].actions.push_back(std::move(action));
}

nlohmann::ordered_json EncodedSchedule::to_json(const RoutingGraph& graph) const {
  nlohmann::ordered_json j;
  j["delta"] = delta();
  auto cs = nlohmann::ordered_json::array();
  for (std::size_t t = 0; t < cycles.size(); ++t) {
    nlohmann::ordered_json c;
    c["index"] = t;
    auto as = nlohmann::ordered_json::array();
    for (const auto& a : cycles[t].actions) {
      nlohmann::ordered_json e;
      e["kind"] = to_string(a.kind);
      if (a.kind == ActionKind::CutModify) {
        e["qubit"] = a.qubit;
        e["cut"] = std::string(1, to_char(a.new_cut));
      } else {
        e["gate"] = a.gate;
      }
      auto route = nlohmann::ordered_json::array();
      for (const auto& p : graph.coordinates(a.route)) route.push_back({p[0], p[1]});
      e["route"] = std::move(route);
      e["phase"] = a.phase;
      as.push_back(std::move(e));
    }
    c["actions"] = std::move(as);
    cs.push_back(std::move(c));
  }
  j["cycles"] = std::move(cs);
  return j;
}

std::vector<std::string> validate(const EncodedSchedule& schedule, const LogicalCircuit& circuit,
                                  const ChipLayout& layout, const TileMapping& mapping) {
  std::vector<std::string> errs;
  auto err = [&](std::string s) { errs.push_back(std::move(s)); };
  const int n = circuit.num_qubits(), g = circuit.num_gates();
  const bool dd = layout.model() == Model::DoubleDefect;
  if (schedule.model != layout.model()) err("schedule model differs from the chip model");
  if (mapping.num_qubits() < n) {
    err("mapping covers fewer qubits than the circuit");
    return errs;
  }
  std::optional<RoutingGraph> graph;
  try {
    graph.emplace(layout, mapping.tiles());
  } catch (const Error& e) {
    err(std::string("mapping does not fit the chip: ") + e.what());
    return errs;
  }
  CutAssignment cuts = schedule.initial_cuts;
  if (dd && static_cast<int>(cuts.size()) < n) {
    err("double-defect schedule lacks an initial cut per qubit");
    cuts.resize(static_cast<std::size_t>(n), CutType::X);
  }

  struct Occurrence {
    int cycle;
    const Action* action;
  };
  std::vector<std::vector<Occurrence>> per_gate(static_cast<std::size_t>(g));
  std::map<QubitId, std::vector<Occurrence>> per_qubit_mod;

  for (int t = 0; t < schedule.delta(); ++t) {
    std::map<TileCoord, int> tile_use;
    std::vector<int> usage(static_cast<std::size_t>(graph->num_resources()), 0);
    std::vector<std::pair<QubitId, CutType>> flips;
    for (const auto& a : schedule.cycles[static_cast<std::size_t>(t)].actions) {
      const std::string where = "cycle " + std::to_string(t) + ": ";
      if (a.kind == ActionKind::CutModify) {
        if (!dd) err(where + "cut modification on a lattice-surgery chip");
        if (a.qubit < 0 || a.qubit >= n) {
          err(where + "cut modification on unknown qubit " + std::to_string(a.qubit));
          continue;
        }
        if (a.phase < 1 || a.phase > 3) err(where + "bad modification phase");
        ++tile_use[mapping.tile(a.qubit)];
        per_qubit_mod[a.qubit].push_back({t, &a});
        if (dd && a.phase == 1 && a.new_cut == cuts[a.qubit]) {
          err(where + "qubit " + std::to_string(a.qubit) + " modified to the cut it already has");
        }
        if (a.phase == 3) flips.emplace_back(a.qubit, a.new_cut);
        continue;
      }
      if (a.gate < 0 || a.gate >= g) {
        err(where + "unknown gate " + std::to_string(a.gate));
        continue;
      }
      const std::string name = "gate " + std::to_string(a.gate);
      const bool model_ok = dd ? a.kind != ActionKind::BellCnot : a.kind == ActionKind::BellCnot;
      if (!model_ok) err(where + name + " uses " + to_string(a.kind) + " on the wrong chip model");
      const auto& c = circuit.gate(a.gate);
      const TileCoord ta = mapping.tile(c.control), tb = mapping.tile(c.target);
      ++tile_use[ta];
      ++tile_use[tb];
      if (!graph->connects(a.route, ta, tb)) err(where + name + " route does not join its tiles");
      for (int r : a.route.resources())
        if (r >= 0 && r < graph->num_resources()) ++usage[r];
      per_gate[a.gate].push_back({t, &a});
      if (dd) {
        const bool opposite = cuts[c.control] != cuts[c.target];
        if (a.kind == ActionKind::BraidCnot && !opposite) err(where + name + " braided between equal cuts");
        if (a.kind == ActionKind::DirectSameCut && opposite) err(where + name + " direct CNOT between opposite cuts");
      }
    }
    for (const auto& [tile, count] : tile_use) {
      if (count > 1) {
        err("cycle " + std::to_string(t) + ": tile (" + std::to_string(tile.row) + "," + std::to_string(tile.col) +
            ") used by " + std::to_string(count) + " actions");
      }
    }
    for (int r = 0; r < graph->num_resources(); ++r) {
      if (usage[r] > graph->capacity(r)) {
        err("cycle " + std::to_string(t) + ": channel resource " + std::to_string(r) + " carries " +
            std::to_string(usage[r]) + " routes over capacity " + std::to_string(graph->capacity(r)));
      }
    }
    for (const auto& [q, cut] : flips) cuts[q] = cut;
  }

  // Three-cycle actions must run their phases back to back.
  auto check_triple = [&](const std::vector<Occurrence>& occ, const std::string& what) {
    if (occ.size() % 3 != 0) {
      err(what + " has an incomplete three-cycle action");
      return;
    }
    for (std::size_t i = 0; i < occ.size(); i += 3) {
      for (int k = 0; k < 3; ++k) {
        const auto& o = occ[i + k];
        if (o.action->phase != k + 1 || o.cycle != occ[i].cycle + k || !(o.action->route == occ[i].action->route) ||
            o.action->new_cut != occ[i].action->new_cut || o.action->kind != occ[i].action->kind) {
          err(what + " three-cycle action is not contiguous (cycle " + std::to_string(o.cycle) + ")");
          return;
        }
      }
    }
  };
  for (auto& [q, occ] : per_qubit_mod) check_triple(occ, "qubit " + std::to_string(q));

  std::vector<int> start(static_cast<std::size_t>(g), -1), finish(static_cast<std::size_t>(g), -1);
  for (GateId id = 0; id < g; ++id) {
    const auto& occ = per_gate[id];
    const std::string name = "gate " + std::to_string(id);
    if (occ.empty()) {
      err(name + " never executed");
      continue;
    }
    const ActionKind kind = occ.front().action->kind;
    if (kind == ActionKind::DirectSameCut) {
      if (occ.size() != 3) {
        err(name + " executed " + std::to_string(occ.size()) + " direct phases instead of 3");
        continue;
      }
      check_triple(occ, name);
      start[id] = occ.front().cycle;
      finish[id] = occ.front().cycle + 2;
    } else {
      if (occ.size() != 1) {
        err(name + " executed " + std::to_string(occ.size()) + " times");
        continue;
      }
      start[id] = finish[id] = occ.front().cycle;
    }
  }
  const GateDag dag(circuit);
  for (GateId id = 0; id < g; ++id) {
    if (start[id] < 0) continue;
    for (GateId p : dag.parents(id)) {
      if (finish[p] >= 0 && start[id] <= finish[p]) {
        err("gate " + std::to_string(id) + " starts at cycle " + std::to_string(start[id]) + " before parent gate " +
            std::to_string(p) + " completes at cycle " + std::to_string(finish[p]));
      }
    }
  }
  return errs;
}

}  // namespace surfc
