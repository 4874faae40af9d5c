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

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "surfc/chip.hpp"
#include "surfc/circuit.hpp"
#include "surfc/placement.hpp"
#include "surfc/profiler.hpp"
#include "surfc/router.hpp"

namespace surfc {

enum class ActionKind {
  BraidCnot,      ///< double defect, opposite cuts, one cycle
  BellCnot,       ///< lattice surgery, one cycle (empty route: adjacent merge)
  DirectSameCut,  ///< double defect, same cuts, three cycles on one route
  CutModify,      ///< flips one tile's cut over three cycles
};

std::string to_string(ActionKind k);

struct Action {
  ActionKind kind = ActionKind::BraidCnot;
  GateId gate = -1;    ///< CNOT actions
  QubitId qubit = -1;  ///< CutModify
  CutType new_cut = CutType::X;
  RoutePath route;
  int phase = 1;  ///< 1..3 for the three-cycle actions
};

struct Cycle {
  std::vector<Action> actions;
};

/// Cycle-by-cycle encoded program. Delta is the number of cycles.
struct EncodedSchedule {
  Model model = Model::DoubleDefect;
  CutAssignment initial_cuts;  ///< double defect only
  std::vector<Cycle> cycles;

  int delta() const { return static_cast<int>(cycles.size()); }
  /// Grows the cycle list as needed.
  void add(int cycle, Action action);
  /// {delta, cycles:[{index, actions:[{kind, gate, route, phase}]}]}.
  nlohmann::ordered_json to_json(const RoutingGraph& graph) const;
};

/// Checks every rule a schedule must obey and returns all violations; an
/// empty list means the schedule is valid.
std::vector<std::string> validate(const EncodedSchedule& schedule, const LogicalCircuit& circuit,
                                  const ChipLayout& layout, const TileMapping& mapping);

struct GatePriority {
  int criticality = 1;  ///< longest chain from the gate to a sink, in gates
  int remaining = 1;    ///< descendants + 1
};

/// Priorities of every gate in one pass.
std::vector<GatePriority> gate_priorities(const GateDag& dag);
GatePriority gate_priority(const GateDag& dag, GateId gate);

/// Inputs of the same-cut decision for one tile.
struct MValueInputs {
  double m_t = 0;    ///< cycle delta of modifying versus the direct CNOT
  double m_s = 0;    ///< lane-occupation delta
  double theta = 0;  ///< pressure weight
  double value() const { return m_t + theta * m_s; }
};

/// theta = (2 |ready| / total bandwidth) x n; 0 on a chip without channels.
double pressure_weight(int other_ready, int total_bandwidth, int num_qubits);

/// M_t = (4 - idle_credit) - 3 with idle_credit capped at 3;
/// M_s = -1 + look-ahead (each later gate on the tile: -1 if its partner
/// shares the tile's cut now, +1 otherwise).
MValueInputs m_value(int idle_cycles, int lookahead, int other_ready, int total_bandwidth, int num_qubits);

enum class SchedulerVariant { Ecmas, CircuitOrder, TimeFirst, ChannelFirst };

struct LimitedOptions {
  SchedulerVariant variant = SchedulerVariant::Ecmas;
};

/// Cycle-driven list scheduling on a limited chip. Throws InfeasibleError
/// naming the gate when a ready gate can never be routed.
EncodedSchedule schedule_limited(const LogicalCircuit& circuit, const ChipLayout& layout, const TileMapping& mapping,
                                 const CutAssignment& cuts, const LimitedOptions& options = {});

enum class BaselineScheduler { CircuitOrder, TimeFirst, ChannelFirst };
EncodedSchedule baseline_schedule(BaselineScheduler kind, const LogicalCircuit& circuit, const ChipLayout& layout,
                                  const TileMapping& mapping, const CutAssignment& cuts);

/// Longest run of layers from `start` whose union of interactions stays
/// bipartite.
struct BipartiteSegment {
  std::vector<int> colour;     ///< per qubit, -1 when untouched
  std::vector<int> component;  ///< per qubit, -1 when untouched
  int end = 0;                 ///< first unconsumed layer index
};
BipartiteSegment bipartite_prefix(const LogicalCircuit& circuit, const std::vector<std::vector<GateId>>& layers,
                                  int start);

/// One layer per cycle; double defect inserts a three-cycle global cut remap
/// between bipartite segments. Requires chip_capacity(b) >= the widest layer;
/// throws InfeasibleError otherwise.
EncodedSchedule schedule_sufficient(const LogicalCircuit& circuit, const LayerSchedule& layers,
                                    const ChipLayout& layout, const TileMapping& mapping);

}  // namespace surfc
