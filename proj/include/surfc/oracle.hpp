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

#include <utility>
#include <vector>

#include "surfc/chip.hpp"
#include "surfc/circuit.hpp"
#include "surfc/placement.hpp"
#include "surfc/router.hpp"

namespace surfc {

/// Inputs larger than this are refused with BudgetExceeded.
struct OracleBudget {
  int max_gates = 8;
  int max_qubits = 6;
  int max_rows = 3;
  int max_cols = 3;
  double time_limit_seconds = 60.0;
};

/// Minimum, over every precedence-respecting layering of length alpha, of the
/// largest layer.
int optimal_pm(const GateDag& dag, const OracleBudget& budget = {});

/// Fewest cycles of any schedule the validator accepts. With `cuts` empty a
/// double-defect search also chooses the initial cut types.
int optimal_cycles(const LogicalCircuit& circuit, const ChipLayout& layout, const TileMapping& mapping,
                   const CutAssignment& cuts = {}, const OracleBudget& budget = {});

/// Whether all pairs can be routed in the same cycle. `occupied` lists the
/// data tiles (relevant to lattice surgery, where routes avoid them).
bool routing_feasible(const ChipLayout& layout, const std::vector<TileCoord>& occupied,
                      const std::vector<std::pair<TileCoord, TileCoord>>& pairs, const OracleBudget& budget = {});

}  // namespace surfc
