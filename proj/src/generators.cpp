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

#include "surfc/generators.hpp"

#include <algorithm>
#include <map>

#include "surfc/error.hpp"
#include "surfc/rng.hpp"

namespace surfc {

LogicalCircuit gen_random_circuit(int n, int depth, int parallelism, std::uint64_t seed) {
  if (depth < 1 || parallelism < 1 || 2 * parallelism > n) {
    throw ValidationError("infeasible random circuit parameters: n=" + std::to_string(n) +
                          " depth=" + std::to_string(depth) +
                          " parallelism=" + std::to_string(parallelism));
  }
  Rng rng(seed);
  const int lo = (parallelism + 1) / 2;
  std::vector<int> sizes(static_cast<std::size_t>(depth));
  for (auto& s : sizes) s = static_cast<int>(rng.uniform(lo, parallelism));
  sizes[static_cast<std::size_t>(rng.index(sizes.size()))] = parallelism;

  LogicalCircuit circuit(n);
  std::vector<std::pair<QubitId, QubitId>> prev;
  for (int layer = 0; layer < depth; ++layer) {
    const int k = sizes[static_cast<std::size_t>(layer)];
    std::vector<std::pair<QubitId, QubitId>> cur(static_cast<std::size_t>(k), {-1, -1});
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    auto take = [&](QubitId q) {
      used[static_cast<std::size_t>(q)] = 1;
      return q;
    };
    if (!prev.empty()) {
      rng.shuffle(prev);
      const int kp = static_cast<int>(prev.size());
      auto pick = [&](const std::pair<QubitId, QubitId>& g) { return rng.coin() ? g.first : g.second; };
      if (k >= kp) {
        for (int j = 0; j < kp; ++j) {
          const QubitId q = pick(prev[j]);
          cur[j].first = take(q);
        }
        for (int j = kp; j < k; ++j) {
          const auto& g = prev[j - kp];
          const QubitId q = cur[j - kp].first == g.first ? g.second : g.first;
          cur[j].first = take(q);
        }
      } else {
        const int merged = kp - k;
        for (int j = 0; j < merged; ++j) {
          cur[j].first = take(pick(prev[2 * j]));
          cur[j].second = take(pick(prev[2 * j + 1]));
        }
        for (int j = merged; j < k; ++j) cur[j].first = take(pick(prev[merged + j]));
      }
    }
    std::vector<QubitId> free;
    for (QubitId q = 0; q < n; ++q)
      if (!used[q]) free.push_back(q);
    rng.shuffle(free);
    std::size_t next_free = 0;
    for (auto& g : cur) {
      if (g.first < 0) g.first = free[next_free++];
      if (g.second < 0) g.second = free[next_free++];
      if (rng.coin()) std::swap(g.first, g.second);
    }
    rng.shuffle(cur);
    for (const auto& g : cur) circuit.add_cnot(g.first, g.second);
    prev = std::move(cur);
  }
  return circuit;
}

SatGadget gen_3sat_gadget(const std::vector<Clause>& formula) {
  int num_vars = 0;
  std::map<int, int> occurrences;
  for (const auto& clause : formula) {
    for (const auto& lit : clause) {
      if (lit.var < 0) throw ValidationError("malformed clause: negative variable index");
      num_vars = std::max(num_vars, lit.var + 1);
      ++occurrences[lit.var];
    }
    if (clause[0].var == clause[1].var || clause[0].var == clause[2].var ||
        clause[1].var == clause[2].var) {
      throw ValidationError("malformed clause: repeated variable");
    }
  }

  SatGadget out;
  const int m = static_cast<int>(formula.size());
  int next = 0;
  for (int i = 0; i < m; ++i) {
    ClauseQubits cq;
    for (auto& q : cq.literal) q = next++;
    for (auto& q : cq.ancilla) q = next++;
    cq.t = next++;
    cq.f = next++;
    cq.spacer = next++;
    out.clauses.push_back(cq);
  }
  out.ideal.assign(static_cast<std::size_t>(num_vars), -1);
  std::vector<QubitId> ideal_spacer(static_cast<std::size_t>(num_vars), -1);
  for (auto [var, count] : occurrences) {
    if (count >= 2) {
      out.ideal[var] = next++;
      ideal_spacer[var] = next++;
    }
  }
  if (m >= 2) {
    out.ideal_true = next++;
    out.ideal_false = next++;
  }

  LogicalCircuit c(next);
  // Clause blocks: literal k talks to T or F, then T-F, while the other two
  // literals are held by their ancillas; the spacer pins literal k afterwards.
  for (int i = 0; i < m; ++i) {
    const auto& cq = out.clauses[i];
    for (int k = 0; k < 3; ++k) {
      const Literal& lit = formula[i][k];
      c.add_cnot(cq.literal[k], lit.positive ? cq.t : cq.f);
      c.add_cnot(cq.t, cq.f);
      for (int o = 1; o <= 2; ++o) {
        const int j = (k + o) % 3;
        c.add_cnot(cq.literal[j], cq.ancilla[j]);
      }
      c.add_cnot(cq.literal[k], cq.spacer);
    }
  }
  // Consistency: every occurrence of a repeated variable meets its ideal
  // literal; spacer gates pad each ideal literal to m gates.
  for (int var = 0; var < num_vars; ++var) {
    if (out.ideal[var] < 0) continue;
    int gates = 0;
    for (int i = 0; i < m; ++i) {
      for (int k = 0; k < 3; ++k) {
        if (formula[i][k].var == var) {
          c.add_cnot(out.clauses[i].literal[k], out.ideal[var]);
          ++gates;
        }
      }
    }
    for (; gates < m; ++gates) c.add_cnot(out.ideal[var], ideal_spacer[var]);
  }
  if (m >= 2) {
    for (int i = 0; i < m; ++i) c.add_cnot(out.ideal_true, out.ideal_false);
  }
  out.circuit = std::move(c);
  return out;
}

LogicalCircuit ghz_circuit(int n) {
  LogicalCircuit c(n);
  for (int i = 0; i + 1 < n; ++i) c.add_cnot(i, i + 1);
  return c;
}

LogicalCircuit bv_circuit(int n, int ones) {
  if (n < 2 || ones > n - 1) throw ValidationError("bv: need ones <= n-1");
  LogicalCircuit c(n);
  // Spread the secret's set bits over the data register.
  const int data = n - 1;
  for (int k = 0; k < ones; ++k) c.add_cnot(static_cast<int>((static_cast<long>(k) * data) / ones), n - 1);
  return c;
}

LogicalCircuit qft_circuit(int n) {
  LogicalCircuit c(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      // Controlled phase as two CNOTs.
      c.add_cnot(j, i);
      c.add_cnot(j, i);
    }
  }
  return c;
}

LogicalCircuit ising_circuit(int n, int steps) {
  LogicalCircuit c(n);
  for (int s = 0; s < steps; ++s) {
    for (int parity = 0; parity < 2; ++parity) {
      for (int i = parity; i + 1 < n; i += 2) {
        c.add_cnot(i, i + 1);
        c.add_cnot(i, i + 1);
      }
    }
  }
  return c;
}

LogicalCircuit wstate_circuit(int n) {
  LogicalCircuit c(n);
  for (int i = 0; i + 1 < n; ++i) {
    c.add_cnot(i, i + 1);
    c.add_cnot(i + 1, i);
  }
  return c;
}

namespace {
void toffoli(LogicalCircuit& c, QubitId a, QubitId b, QubitId t) {
  c.add_cnot(b, t);
  c.add_cnot(a, t);
  c.add_cnot(b, t);
  c.add_cnot(a, t);
  c.add_cnot(a, b);
  c.add_cnot(a, b);
}
}  // namespace

LogicalCircuit swap_test_circuit(int n) {
  if (n < 3 || n % 2 == 0) throw ValidationError("swap test needs an odd n >= 3");
  LogicalCircuit c(n);
  const int k = (n - 1) / 2;
  for (int i = 1; i <= k; ++i) {
    c.add_cnot(i + k, i);
    toffoli(c, 0, i, i + k);
    c.add_cnot(i + k, i);
  }
  return c;
}

LogicalCircuit qpe_like_circuit(int n) {
  if (n < 3) throw ValidationError("qpe needs n >= 3");
  LogicalCircuit c(n);
  const int target = n - 1;
  const int counting = n - 1;
  for (int i = 0; i < counting; ++i) {
    const int reps = i + 1 < counting ? i + 1 : 2 * (counting - 1);
    for (int r = 0; r < reps; ++r) c.add_cnot(i, target);
  }
  c.add_cnot(0, 1);
  return c;
}

LogicalCircuit benchmark_circuit(const std::string& name, int n) {
  if (name == "ghz") return ghz_circuit(n);
  if (name == "bv") return bv_circuit(n, (n - 1 + 1) / 2);
  if (name == "qft") return qft_circuit(n);
  if (name == "ising") return ising_circuit(n, 5);
  if (name == "wstate") return wstate_circuit(n);
  if (name == "swap_test") return swap_test_circuit(n);
  if (name == "qpe") return qpe_like_circuit(n);
  throw ValidationError("unknown benchmark '" + name + "'");
}

}  // namespace surfc
