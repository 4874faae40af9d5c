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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "surfc/circuit.hpp"

namespace surfc {

/// Layer-by-layer random circuit whose unique minimum-length layering has
/// exactly `depth` layers and a widest layer of exactly `parallelism` gates.
/// Every gate shares a qubit with some gate of the previous and of the next
/// layer, so no gate has slack.
LogicalCircuit gen_random_circuit(int n, int depth, int parallelism, std::uint64_t seed);

struct Literal {
  int var = 0;
  bool positive = true;
};
using Clause = std::array<Literal, 3>;

/// Qubit roles of one clause block, for structural inspection.
struct ClauseQubits {
  std::array<QubitId, 3> literal;
  std::array<QubitId, 3> ancilla;
  QubitId t = -1;
  QubitId f = -1;
  QubitId spacer = -1;
};

struct SatGadget {
  LogicalCircuit circuit;
  std::vector<ClauseQubits> clauses;
  /// Ideal-literal qubit per variable, -1 when the variable occurs once.
  std::vector<QubitId> ideal;
  QubitId ideal_true = -1;
  QubitId ideal_false = -1;
};

/// Circuit construction from the 3-SAT reduction for cut-type
/// initialisation. For stress tests only; it does not decide satisfiability.
SatGadget gen_3sat_gadget(const std::vector<Clause>& formula);

// Regenerated benchmark families.
LogicalCircuit ghz_circuit(int n);
/// Bernstein-Vazirani oracle: `ones` controls fan into the last qubit.
LogicalCircuit bv_circuit(int n, int ones);
LogicalCircuit qft_circuit(int n);
LogicalCircuit ising_circuit(int n, int steps);
LogicalCircuit wstate_circuit(int n);
LogicalCircuit swap_test_circuit(int n);
/// Phase-estimation-like controlled-power ladder onto one target plus one
/// inverse-transform gate; n = 9 gives depth 42 with 43 gates.
LogicalCircuit qpe_like_circuit(int n);

/// Builds a named benchmark ("ghz", "bv", "qft", "ising", "wstate",
/// "swap_test", "qpe") sized by n.
LogicalCircuit benchmark_circuit(const std::string& name, int n);

}  // namespace surfc
