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

#include <cstdint>

#include "surfc/circuit.hpp"
#include "surfc/rng.hpp"

namespace surfc::testing {

/// g CNOTs on uniformly drawn distinct qubit pairs.
inline LogicalCircuit random_gates(int n, int g, std::uint64_t seed) {
  Rng rng(seed);
  LogicalCircuit c(n);
  for (int i = 0; i < g; ++i) {
    const int a = rng.index(static_cast<std::size_t>(n));
    int b = a;
    while (b == a) b = rng.index(static_cast<std::size_t>(n));
    c.add_cnot(a, b);
  }
  return c;
}

}  // namespace surfc::testing
