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

#include "surfc/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <set>
#include <string>
#include <unordered_set>

#include "surfc/error.hpp"

namespace surfc {

namespace {

using Clock = std::chrono::steady_clock;
using Pairs = std::vector<std::pair<TileCoord, TileCoord>>;

class Deadline {
 public:
  explicit Deadline(double seconds) : end_(Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                                              std::chrono::duration<double>(seconds))) {}
  void poll() {
    if ((++ticks_ & 1023) == 0 && Clock::now() > end_) throw BudgetExceeded("oracle time limit exceeded");
  }

 private:
  Clock::time_point end_;
  std::uint64_t ticks_ = 0;
};

void check_grid(const ChipLayout& layout, const OracleBudget& budget) {
  if (layout.rows() > budget.max_rows || layout.cols() > budget.max_cols) {
    throw BudgetExceeded("oracle refuses a " + std::to_string(layout.rows()) + "x" + std::to_string(layout.cols()) +
                         " tile grid (limit " + std::to_string(budget.max_rows) + "x" +
                         std::to_string(budget.max_cols) + ")");
  }
}

// Walks every simple route from a to b that fits the residual capacities and
// calls `visit` with it committed. `visit` returning true stops the walk.
// Lattice-surgery routes are restricted to induced paths: any other path can
// be shortcut onto a subset of its cells.
bool each_route(const RoutingGraph& graph, Occupancy& occ, TileCoord a, TileCoord b, Deadline& deadline,
                const std::function<bool(const RoutePath&)>& visit) {
  if (graph.model() == Model::LatticeSurgery && RoutingGraph::adjacent(a, b)) return visit(RoutePath{});
  const bool induced = graph.model() == Model::LatticeSurgery;
  const auto ta = graph.terminals(a), tb = graph.terminals(b);
  std::vector<char> start(static_cast<std::size_t>(graph.num_nodes()), 0), goal(start.size(), 0), on(start.size(), 0);
  for (int t : ta) start[t] = 1;
  for (int t : tb) goal[t] = 1;
  std::vector<char> held(static_cast<std::size_t>(graph.num_resources()), 0);
  // Hop distance to the goal steers the walk towards short routes first.
  std::vector<int> dist(start.size(), -1);
  std::deque<int> queue;
  for (int t : tb) {
    dist[t] = 0;
    queue.push_back(t);
  }
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (const auto& e : graph.arcs(u)) {
      if (dist[e.to] < 0) {
        dist[e.to] = dist[u] + 1;
        queue.push_back(e.to);
      }
    }
  }
  RoutePath cur;
  std::function<bool(int)> dfs = [&](int u) {
    deadline.poll();
    if (goal[u]) {
      occ.commit(cur, 0);
      const bool stop = visit(cur);
      occ.release(cur, 0);
      return stop;
    }
    auto arcs = graph.arcs(u);
    std::stable_sort(arcs.begin(), arcs.end(), [&](const auto& x, const auto& y) { return dist[x.to] < dist[y.to]; });
    for (const auto& e : arcs) {
      if (dist[e.to] < 0) continue;
      const int w = e.to;
      if (on[w] || start[w] || held[w] || !occ.resource_free(w, 0)) continue;
      if (e.via >= 0 && (held[e.via] || !occ.resource_free(e.via, 0))) continue;
      if (induced) {
        bool chord = false;
        for (const auto& f : graph.arcs(w)) chord = chord || (f.to != u && on[f.to]);
        if (chord) continue;
      }
      on[w] = held[w] = 1;
      if (e.via >= 0) held[e.via] = 1;
      cur.nodes.push_back(w);
      cur.vias.push_back(e.via);
      const bool stop = dfs(w);
      cur.nodes.pop_back();
      cur.vias.pop_back();
      on[w] = held[w] = 0;
      if (e.via >= 0) held[e.via] = 0;
      if (stop) return true;
    }
    return false;
  };
  for (int s : ta) {
    if (!occ.resource_free(s, 0)) continue;
    on[s] = held[s] = 1;
    cur.nodes.assign(1, s);
    cur.vias.clear();
    const bool stop = dfs(s);
    on[s] = held[s] = 0;
    if (stop) return true;
  }
  return false;
}

bool all_routable(const RoutingGraph& graph, Occupancy& occ, const Pairs& pairs, std::size_t i, Deadline& deadline) {
  if (i == pairs.size()) return true;
  if (i + 1 == pairs.size()) return find_path(graph, occ, pairs[i].first, pairs[i].second).has_value();
  return each_route(graph, occ, pairs[i].first, pairs[i].second, deadline,
                    [&](const RoutePath&) { return all_routable(graph, occ, pairs, i + 1, deadline); });
}

// Routes whose resources are not a superset of another route's resources.
std::vector<RoutePath> minimal_routes(const RoutingGraph& graph, TileCoord a, TileCoord b) {
  auto all = enumerate_routes(graph, a, b, graph.num_nodes());
  std::vector<std::pair<std::vector<int>, std::size_t>> keyed;
  for (std::size_t i = 0; i < all.size(); ++i) {
    auto r = all[i].resources();
    std::sort(r.begin(), r.end());
    keyed.emplace_back(std::move(r), i);
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
    return x.first.size() != y.first.size() ? x.first.size() < y.first.size() : x.first < y.first;
  });
  std::vector<RoutePath> out;
  std::vector<std::vector<int>> kept;
  for (const auto& [res, idx] : keyed) {
    bool dominated = false;
    for (const auto& k : kept) {
      if (std::includes(res.begin(), res.end(), k.begin(), k.end())) {
        dominated = true;
        break;
      }
    }
    if (dominated) continue;
    kept.push_back(res);
    out.push_back(all[idx]);
  }
  return out;
}

}  // namespace

int optimal_pm(const GateDag& dag, const OracleBudget& budget) {
  const int g = dag.size();
  if (g > budget.max_gates) {
    throw BudgetExceeded("oracle refuses " + std::to_string(g) + " gates (limit " + std::to_string(budget.max_gates) +
                         ")");
  }
  if (g == 0) return 0;
  std::vector<int> tail(static_cast<std::size_t>(g), 1);  // longest chain from the gate to a sink
  for (GateId v = g - 1; v >= 0; --v)
    for (GateId c : dag.children(v)) tail[v] = std::max(tail[v], tail[c] + 1);
  int alpha = 0;
  for (int t : tail) alpha = std::max(alpha, t);

  Deadline deadline(budget.time_limit_seconds);
  std::vector<int> layer(static_cast<std::size_t>(g), 0), load(static_cast<std::size_t>(alpha) + 1, 0);
  int best = g;
  std::function<void(GateId, int)> go = [&](GateId v, int widest) {
    deadline.poll();
    if (widest >= best) return;
    if (v == g) {
      best = widest;
      return;
    }
    int lo = 1;
    for (GateId p : dag.parents(v)) lo = std::max(lo, layer[p] + 1);
    const int hi = alpha - tail[v] + 1;
    for (int l = lo; l <= hi; ++l) {
      layer[v] = l;
      ++load[l];
      go(v + 1, std::max(widest, load[l]));
      --load[l];
    }
  };
  go(0, 0);
  return best;
}

bool routing_feasible(const ChipLayout& layout, const std::vector<TileCoord>& occupied, const Pairs& pairs,
                      const OracleBudget& budget) {
  check_grid(layout, budget);
  if (static_cast<int>(pairs.size()) > budget.max_gates) {
    throw BudgetExceeded("oracle refuses " + std::to_string(pairs.size()) + " pairs (limit " +
                         std::to_string(budget.max_gates) + ")");
  }
  std::set<TileCoord> seen;
  for (const auto& [a, b] : pairs) {
    if (!seen.insert(a).second || !seen.insert(b).second) {
      throw ValidationError("simultaneous pairs must use distinct tiles");
    }
  }
  const RoutingGraph graph(layout, occupied);
  Occupancy occ(graph);
  Deadline deadline(budget.time_limit_seconds);
  return all_routable(graph, occ, pairs, 0, deadline);
}

namespace {

struct Ongoing {
  int kind = 0;   // 0 direct CNOT, 1 cut modification
  int id = 0;     // gate or qubit
  int route = 0;  // index into the gate's minimal routes (directs)
  int phase = 1;  // phases already executed
  auto operator<=>(const Ongoing&) const = default;
};

struct State {
  std::uint32_t done = 0;
  std::uint32_t cuts = 0;  // bit q set: qubit q has a Z cut
  std::vector<Ongoing> ongoing;

  std::string key() const {
    std::string k(reinterpret_cast<const char*>(&done), sizeof done);
    k.append(reinterpret_cast<const char*>(&cuts), sizeof cuts);
    for (const auto& o : ongoing) {
      const int v[4] = {o.kind, o.id, o.route, o.phase};
      k.append(reinterpret_cast<const char*>(v), sizeof v);
    }
    return k;
  }
};

}  // namespace

int optimal_cycles(const LogicalCircuit& circuit, const ChipLayout& layout, const TileMapping& mapping,
                   const CutAssignment& cuts, const OracleBudget& budget) {
  const int n = circuit.num_qubits(), g = circuit.num_gates();
  if (g > budget.max_gates || n > budget.max_qubits) {
    throw BudgetExceeded("oracle refuses " + std::to_string(n) + " qubits / " + std::to_string(g) +
                         " gates (limits " + std::to_string(budget.max_qubits) + " / " +
                         std::to_string(budget.max_gates) + ")");
  }
  check_grid(layout, budget);
  if (g == 0) return 0;
  if (mapping.num_qubits() < n) throw ValidationError("mapping covers fewer qubits than the circuit");
  const bool dd = layout.model() == Model::DoubleDefect;
  if (dd && !cuts.empty() && static_cast<int>(cuts.size()) < n) {
    throw ValidationError("cut assignment covers fewer qubits than the circuit");
  }

  const RoutingGraph graph(layout, mapping.tiles());
  const GateDag dag(circuit);
  std::vector<std::uint32_t> parents(static_cast<std::size_t>(g), 0);
  for (GateId v = 0; v < g; ++v)
    for (GateId p : dag.parents(v)) parents[v] |= 1u << p;
  std::vector<std::uint32_t> touching(static_cast<std::size_t>(n), 0);
  for (GateId v = 0; v < g; ++v) {
    touching[circuit.gate(v).control] |= 1u << v;
    touching[circuit.gate(v).target] |= 1u << v;
  }
  std::vector<std::vector<RoutePath>> direct_routes(static_cast<std::size_t>(g));
  for (GateId v = 0; v < g; ++v) {
    const auto& c = circuit.gate(v);
    if (dd) direct_routes[v] = minimal_routes(graph, mapping.tile(c.control), mapping.tile(c.target));
  }
  const std::uint32_t all = g == 32 ? ~0u : (1u << g) - 1;
  Deadline deadline(budget.time_limit_seconds);

  std::vector<State> frontier;
  if (!dd) {
    frontier.push_back({});
  } else if (!cuts.empty()) {
    State s;
    for (int q = 0; q < n; ++q)
      if (cuts[q] == CutType::Z) s.cuts |= 1u << q;
    frontier.push_back(s);
  } else {
    for (std::uint32_t m = 0; m < (1u << n); ++m) frontier.push_back({0, m, {}});
  }
  std::unordered_set<std::string> seen;
  for (const auto& s : frontier) seen.insert(s.key());

  struct Candidate {
    int kind;  // 0 one-cycle CNOT, 1 direct start, 2 modification
    int id;
    TileCoord a, b;
  };

  for (int depth = 1;; ++depth) {
    std::vector<State> next;
    for (const State& s : frontier) {
      std::set<TileCoord> busy;
      Occupancy base(graph);
      std::uint32_t running = 0;
      for (const auto& o : s.ongoing) {
        if (o.kind == 0) {
          const auto& c = circuit.gate(o.id);
          busy.insert(mapping.tile(c.control));
          busy.insert(mapping.tile(c.target));
          base.commit(direct_routes[o.id][o.route], 0);
          running |= 1u << o.id;
        } else {
          busy.insert(mapping.tile(o.id));
        }
      }
      std::vector<Candidate> cand;
      for (GateId v = 0; v < g; ++v) {
        if ((s.done | running) >> v & 1u) continue;
        if ((parents[v] & s.done) != parents[v]) continue;
        const auto& c = circuit.gate(v);
        const bool opposite = ((s.cuts >> c.control) ^ (s.cuts >> c.target)) & 1u;
        cand.push_back({!dd || opposite ? 0 : 1, v, mapping.tile(c.control), mapping.tile(c.target)});
      }
      if (dd) {
        std::set<int> modifying;
        for (const auto& o : s.ongoing)
          if (o.kind == 1) modifying.insert(o.id);
        for (QubitId q = 0; q < n; ++q) {
          if (modifying.count(q) || !(touching[q] & ~s.done)) continue;
          cand.push_back({2, q, mapping.tile(q), mapping.tile(q)});
        }
      }

      // Forced continuation of multi-cycle actions.
      State carried;
      carried.done = s.done;
      carried.cuts = s.cuts;
      for (const auto& o : s.ongoing) {
        if (o.phase + 1 < 3) {
          carried.ongoing.push_back({o.kind, o.id, o.route, o.phase + 1});
        } else if (o.kind == 0) {
          carried.done |= 1u << o.id;
        } else {
          carried.cuts ^= 1u << o.id;
        }
      }

      std::vector<int> chosen;
      auto emit = [&](State t) {
        std::sort(t.ongoing.begin(), t.ongoing.end());
        if (t.done == all && t.ongoing.empty()) return true;
        if (seen.insert(t.key()).second) next.push_back(std::move(t));
        return false;
      };
      bool finished = false;
      // Picks one route per new direct CNOT, then checks the one-cycle CNOTs.
      std::function<void(std::size_t, State&)> place_directs = [&](std::size_t k, State& t) {
        if (finished) return;
        while (k < chosen.size() && cand[chosen[k]].kind != 1) ++k;
        if (k == chosen.size()) {
          Pairs braids;
          for (int i : chosen)
            if (cand[i].kind == 0) braids.emplace_back(cand[i].a, cand[i].b);
          if (all_routable(graph, base, braids, 0, deadline)) finished = emit(t);
          return;
        }
        const int v = cand[chosen[k]].id;
        for (std::size_t r = 0; r < direct_routes[v].size() && !finished; ++r) {
          const auto& route = direct_routes[v][r];
          if (!base.path_free(route, 0)) continue;
          base.commit(route, 0);
          t.ongoing.push_back({0, v, static_cast<int>(r), 1});
          place_directs(k + 1, t);
          t.ongoing.pop_back();
          base.release(route, 0);
        }
      };
      std::function<void(std::size_t)> pick = [&](std::size_t i) {
        if (finished) return;
        deadline.poll();
        if (i == cand.size()) {
          if (chosen.empty() && s.ongoing.empty()) return;
          State t = carried;
          for (int c : chosen) {
            if (cand[c].kind == 0) t.done |= 1u << cand[c].id;
            if (cand[c].kind == 2) t.ongoing.push_back({1, cand[c].id, 0, 1});
          }
          place_directs(0, t);
          return;
        }
        pick(i + 1);
        const auto& c = cand[i];
        if (busy.count(c.a) || busy.count(c.b)) return;
        busy.insert(c.a);
        busy.insert(c.b);
        chosen.push_back(static_cast<int>(i));
        pick(i + 1);
        chosen.pop_back();
        busy.erase(c.a);
        busy.erase(c.b);
      };
      pick(0);
      if (finished) return depth;
    }
    if (next.empty()) {
      throw InfeasibleError("no schedule exists for this circuit on the given chip and placement");
    }
    frontier = std::move(next);
  }
}

}  // namespace surfc
