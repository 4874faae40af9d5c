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

#include "surfc/scheduler.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <tuple>

#include "surfc/error.hpp"

namespace surfc {

// ---------------------------------------------------------------------------
// Priorities and M-values

std::vector<GatePriority> gate_priorities(const GateDag& dag) {
  const int g = dag.size();
  std::vector<GatePriority> out(static_cast<std::size_t>(g));
  const std::size_t words = (static_cast<std::size_t>(g) + 63) / 64;
  std::vector<std::vector<std::uint64_t>> below(static_cast<std::size_t>(g));
  // Program order is topological, so a reverse sweep sees children first.
  for (GateId v = g - 1; v >= 0; --v) {
    auto& bits = below[v];
    bits.assign(words, 0);
    int crit = 0;
    for (GateId c : dag.children(v)) {
      crit = std::max(crit, out[c].criticality);
      bits[c / 64] |= std::uint64_t{1} << (c % 64);
      for (std::size_t w = 0; w < words; ++w) bits[w] |= below[c][w];
    }
    out[v].criticality = crit + 1;
    int count = 0;
    for (auto w : bits) count += std::popcount(w);
    out[v].remaining = count + 1;
  }
  return out;
}

GatePriority gate_priority(const GateDag& dag, GateId gate) {
  return gate_priorities(dag).at(static_cast<std::size_t>(gate));
}

double pressure_weight(int other_ready, int total_bandwidth, int num_qubits) {
  if (total_bandwidth <= 0) return 0.0;
  return 2.0 * other_ready / total_bandwidth * num_qubits;
}

MValueInputs m_value(int idle_cycles, int lookahead, int other_ready, int total_bandwidth, int num_qubits) {
  MValueInputs m;
  const int credit = std::clamp(idle_cycles, 0, 3);
  m.m_t = (4 - credit) - 3;
  m.m_s = -1 + lookahead;
  m.theta = pressure_weight(other_ready, total_bandwidth, num_qubits);
  return m;
}

// ---------------------------------------------------------------------------
// Limited resources

namespace {

int idle_before(const Occupancy& occ, TileCoord tile, int t) {
  int k = 0;
  while (k < 3 && t - k - 1 >= 0 && occ.tile_free(tile, t - k - 1)) ++k;
  return k;
}

}  // namespace

EncodedSchedule schedule_limited(const LogicalCircuit& circuit, const ChipLayout& layout, const TileMapping& mapping,
                                 const CutAssignment& cuts, const LimitedOptions& options) {
  const int n = circuit.num_qubits(), g = circuit.num_gates();
  const bool dd = layout.model() == Model::DoubleDefect;
  if (mapping.num_qubits() < n) throw ValidationError("mapping covers fewer qubits than the circuit");
  if (dd && static_cast<int>(cuts.size()) < n) throw ValidationError("double-defect scheduling needs a cut per qubit");

  const RoutingGraph graph(layout, mapping.tiles());
  Occupancy occ(graph);
  EncodedSchedule out;
  out.model = layout.model();
  if (dd) out.initial_cuts.assign(cuts.begin(), cuts.begin() + n);
  CutAssignment cut = out.initial_cuts;

  const GateDag dag(circuit);
  const auto prio = gate_priorities(dag);
  auto before = [&](GateId x, GateId y) {
    if (options.variant == SchedulerVariant::CircuitOrder) return x < y;
    return std::make_tuple(-prio[x].criticality, -prio[x].remaining, x) <
           std::make_tuple(-prio[y].criticality, -prio[y].remaining, y);
  };

  std::vector<int> finish(static_cast<std::size_t>(g), -1);
  std::vector<int> waiting(static_cast<std::size_t>(g));
  std::vector<int> ready_at(static_cast<std::size_t>(g), 0);  // earliest start once parents are placed
  std::vector<GateId> pool;
  for (GateId v = 0; v < g; ++v) {
    waiting[v] = static_cast<int>(dag.parents(v).size());
    if (waiting[v] == 0) pool.push_back(v);
  }
  const int total_bw = layout.total_bandwidth();
  int horizon = -1;  // last cycle holding any reservation
  int left = g;

  auto complete = [&](GateId v, int at) {
    finish[v] = at;
    --left;
    pool.erase(std::find(pool.begin(), pool.end(), v));
    for (GateId c : dag.children(v)) {
      ready_at[c] = std::max(ready_at[c], at + 1);
      if (--waiting[c] == 0) pool.push_back(c);
    }
  };
  auto one_cycle = [&](GateId v, RoutePath path, int t) {
    const auto& c = circuit.gate(v);
    occ.commit(path, t);
    occ.reserve_tile(mapping.tile(c.control), t);
    occ.reserve_tile(mapping.tile(c.target), t);
    Action a;
    a.kind = dd ? ActionKind::BraidCnot : ActionKind::BellCnot;
    a.gate = v;
    a.route = std::move(path);
    out.add(t, std::move(a));
    horizon = std::max(horizon, t);
    complete(v, t);
  };

  for (int t = 0; left > 0; ++t) {
    std::vector<GateId> ready;
    for (GateId v : pool)
      if (ready_at[v] <= t) ready.push_back(v);
    std::sort(ready.begin(), ready.end(), before);
    bool placed = false;
    const int others = std::max(0, static_cast<int>(ready.size()) - 1);
    for (GateId v : ready) {
      const auto& c = circuit.gate(v);
      const TileCoord ta = mapping.tile(c.control), tb = mapping.tile(c.target);
      if (!occ.tile_free(ta, t) || !occ.tile_free(tb, t)) continue;
      if (!dd || cut[c.control] != cut[c.target]) {
        if (auto p = find_path(graph, occ, ta, tb, t)) {
          one_cycle(v, std::move(*p), t);
          placed = true;
        }
        continue;
      }

      // Same cuts: flip one tile or run the three-cycle direct CNOT.
      const int ia = idle_before(occ, ta, t), ib = idle_before(occ, tb, t);
      QubitId flip_q = c.control;
      int credit = ia;
      bool modify = false;
      if (options.variant == SchedulerVariant::Ecmas || options.variant == SchedulerVariant::CircuitOrder) {
        auto lookahead = [&](QubitId q) {
          int s = 0;
          for (GateId h : dag.children(v)) {
            const auto& hc = circuit.gate(h);
            if (!hc.touches(q)) continue;
            const QubitId partner = hc.control == q ? hc.target : hc.control;
            s += cut[partner] == cut[q] ? -1 : 1;
          }
          return s;
        };
        const double ma = m_value(ia, lookahead(c.control), others, total_bw, n).value();
        const double mb = m_value(ib, lookahead(c.target), others, total_bw, n).value();
        // The longer-idle tile flips; M breaks ties and makes the call.
        if (ib > ia || (ib == ia && mb < ma)) {
          flip_q = c.target;
          credit = ib;
        }
        modify = (flip_q == c.target ? mb : ma) < 0;
      } else {
        if (ib > ia) {
          flip_q = c.target;
          credit = ib;
        }
        modify = options.variant == SchedulerVariant::ChannelFirst || (4 - credit) < 3;
      }

      if (modify) {
        const int s0 = t - credit;
        const TileCoord tile = mapping.tile(flip_q);
        occ.reserve_tile(tile, s0, 3);
        for (int k = 0; k < 3; ++k) {
          Action a;
          a.kind = ActionKind::CutModify;
          a.qubit = flip_q;
          a.new_cut = flip(cut[flip_q]);
          a.phase = k + 1;
          out.add(s0 + k, std::move(a));
        }
        cut[flip_q] = flip(cut[flip_q]);
        horizon = std::max(horizon, s0 + 2);
        placed = true;
        if (credit == 3) {
          if (auto p = find_path(graph, occ, ta, tb, t)) one_cycle(v, std::move(*p), t);
        }
        continue;
      }
      if (!occ.tile_free(ta, t, 3) || !occ.tile_free(tb, t, 3)) continue;
      if (auto p = find_path(graph, occ, ta, tb, t, 3)) {
        occ.commit(*p, t, 3);
        occ.reserve_tile(ta, t, 3);
        occ.reserve_tile(tb, t, 3);
        for (int k = 0; k < 3; ++k) {
          Action a;
          a.kind = ActionKind::DirectSameCut;
          a.gate = v;
          a.route = *p;
          a.phase = k + 1;
          out.add(t + k, std::move(a));
        }
        horizon = std::max(horizon, t + 2);
        complete(v, t + 2);
        placed = true;
      }
    }
    if (!placed && horizon < t && !ready.empty()) {
      const GateId v = ready.front();
      const auto& c = circuit.gate(v);
      const TileCoord ta = mapping.tile(c.control), tb = mapping.tile(c.target);
      throw InfeasibleError("gate " + std::to_string(v) + " (q" + std::to_string(c.control) + " -> q" +
                            std::to_string(c.target) + ") cannot be routed between tiles (" +
                            std::to_string(ta.row) + "," + std::to_string(ta.col) + ") and (" +
                            std::to_string(tb.row) + "," + std::to_string(tb.col) + ")");
    }
  }
  return out;
}

EncodedSchedule baseline_schedule(BaselineScheduler kind, const LogicalCircuit& circuit, const ChipLayout& layout,
                                  const TileMapping& mapping, const CutAssignment& cuts) {
  LimitedOptions o;
  switch (kind) {
    case BaselineScheduler::CircuitOrder: o.variant = SchedulerVariant::CircuitOrder; break;
    case BaselineScheduler::TimeFirst: o.variant = SchedulerVariant::TimeFirst; break;
    case BaselineScheduler::ChannelFirst: o.variant = SchedulerVariant::ChannelFirst; break;
  }
  return schedule_limited(circuit, layout, mapping, cuts, o);
}

// ---------------------------------------------------------------------------
// Sufficient resources

namespace {

struct ParityUnionFind {
  std::vector<int> parent, parity;
  explicit ParityUnionFind(int n) : parent(static_cast<std::size_t>(n)), parity(static_cast<std::size_t>(n), 0) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::pair<int, int> find(int x) {
    int p = 0;
    int r = x;
    while (parent[r] != r) {
      p ^= parity[r];
      r = parent[r];
    }
    return {r, p};
  }
  // False when the edge closes an odd cycle.
  bool unite(int a, int b) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return pa != pb;
    parent[ra] = rb;
    parity[ra] = pa ^ pb ^ 1;
    return true;
  }
};

}  // namespace

BipartiteSegment bipartite_prefix(const LogicalCircuit& circuit, const std::vector<std::vector<GateId>>& layers,
                                  int start) {
  const int n = circuit.num_qubits();
  ParityUnionFind uf(n);
  std::vector<char> touched(static_cast<std::size_t>(n), 0);
  int end = start;
  for (int k = start; k < static_cast<int>(layers.size()); ++k) {
    ParityUnionFind trial = uf;
    bool ok = true;
    for (GateId v : layers[k]) {
      const auto& c = circuit.gate(v);
      if (!trial.unite(c.control, c.target)) {
        ok = false;
        break;
      }
    }
    if (!ok) break;
    uf = std::move(trial);
    for (GateId v : layers[k]) {
      touched[circuit.gate(v).control] = 1;
      touched[circuit.gate(v).target] = 1;
    }
    end = k + 1;
  }
  BipartiteSegment seg;
  seg.end = end;
  seg.colour.assign(static_cast<std::size_t>(n), -1);
  seg.component.assign(static_cast<std::size_t>(n), -1);
  for (int q = 0; q < n; ++q) {
    if (!touched[q]) continue;
    auto [root, p] = uf.find(q);
    seg.colour[q] = p;
    seg.component[q] = root;
  }
  return seg;
}

EncodedSchedule schedule_sufficient(const LogicalCircuit& circuit, const LayerSchedule& layers,
                                    const ChipLayout& layout, const TileMapping& mapping) {
  const int n = circuit.num_qubits();
  const int cap = layout.capacity();
  if (layers.pmax() > cap) {
    throw InfeasibleError("sufficient-resource scheduling needs capacity >= " + std::to_string(layers.pmax()) +
                          " but the chip offers " + std::to_string(cap) + "; use the limited scheduler");
  }
  if (mapping.num_qubits() < n) throw ValidationError("mapping covers fewer qubits than the circuit");
  const RoutingGraph graph(layout, mapping.tiles());
  EncodedSchedule out;
  out.model = layout.model();
  const bool dd = layout.model() == Model::DoubleDefect;
  int t = 0;
  auto run_layer = [&](const std::vector<GateId>& layer) {
    std::vector<std::pair<TileCoord, TileCoord>> pairs;
    for (GateId v : layer) pairs.emplace_back(mapping.tile(circuit.gate(v).control), mapping.tile(circuit.gate(v).target));
    auto routes = route_batch_guaranteed(graph, pairs);
    for (std::size_t k = 0; k < layer.size(); ++k) {
      Action a;
      a.kind = dd ? ActionKind::BraidCnot : ActionKind::BellCnot;
      a.gate = layer[k];
      a.route = std::move(routes[k]);
      out.add(t, std::move(a));
    }
    ++t;
  };
  const int L = layers.length();
  if (!dd) {
    for (const auto& layer : layers.layers) run_layer(layer);
    return out;
  }

  CutAssignment cut(static_cast<std::size_t>(n), CutType::X);
  for (int i = 0; i < L;) {
    const auto seg = bipartite_prefix(circuit, layers.layers, i);
    // Per component, keep whichever orientation changes fewer tiles.
    CutAssignment next = cut;
    std::vector<int> keep(static_cast<std::size_t>(n), 0), swap(static_cast<std::size_t>(n), 0);
    for (int q = 0; q < n; ++q) {
      if (seg.colour[q] < 0) continue;
      const CutType as_is = seg.colour[q] ? CutType::Z : CutType::X;
      (as_is != cut[q] ? keep : swap)[seg.component[q]]++;
    }
    for (int q = 0; q < n; ++q) {
      if (seg.colour[q] < 0) continue;
      const int comp = seg.component[q];
      const bool flipped = swap[comp] < keep[comp];
      const CutType as_is = seg.colour[q] ? CutType::Z : CutType::X;
      next[q] = flipped ? flip(as_is) : as_is;
    }
    if (i == 0) {
      out.initial_cuts = next;
    } else {
      bool any = false;
      for (int q = 0; q < n; ++q) {
        if (next[q] == cut[q]) continue;
        any = true;
        for (int k = 0; k < 3; ++k) {
          Action a;
          a.kind = ActionKind::CutModify;
          a.qubit = q;
          a.new_cut = next[q];
          a.phase = k + 1;
          out.add(t + k, std::move(a));
        }
      }
      if (any) t += 3;
    }
    cut = next;
    for (int k = i; k < seg.end; ++k) run_layer(layers.layers[k]);
    i = seg.end;
  }
  if (out.initial_cuts.empty()) out.initial_cuts = cut;
  return out;
}

}  // namespace surfc
