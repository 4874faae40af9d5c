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

#include "surfc/placement.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <tuple>

#include "surfc/error.hpp"
#include "surfc/rng.hpp"
#include "surfc/router.hpp"

namespace surfc {

// ---------------------------------------------------------------------------
// TileMapping

TileMapping::TileMapping(ArrayShape shape, std::vector<TileCoord> tiles)
    : shape_(shape), tiles_(std::move(tiles)),
      occupant_(static_cast<std::size_t>(std::max(0, shape.rows * shape.cols)), -1) {
  for (std::size_t q = 0; q < tiles_.size(); ++q) {
    const auto& t = tiles_[q];
    if (t.row < 0 || t.col < 0 || t.row >= shape.rows || t.col >= shape.cols) {
      throw ValidationError("qubit " + std::to_string(q) + " mapped outside the tile array");
    }
    auto& slot = occupant_[static_cast<std::size_t>(t.row * shape.cols + t.col)];
    if (slot >= 0) throw ValidationError("qubits " + std::to_string(slot) + " and " + std::to_string(q) +
                                         " share a tile");
    slot = static_cast<QubitId>(q);
  }
}

QubitId TileMapping::qubit_at(TileCoord t) const {
  if (t.row < 0 || t.col < 0 || t.row >= shape_.rows || t.col >= shape_.cols) return -1;
  return occupant_[static_cast<std::size_t>(t.row * shape_.cols + t.col)];
}

void TileMapping::swap_tiles(TileCoord a, TileCoord b) {
  auto& qa = occupant_[static_cast<std::size_t>(a.row * shape_.cols + a.col)];
  auto& qb = occupant_[static_cast<std::size_t>(b.row * shape_.cols + b.col)];
  std::swap(qa, qb);
  if (qa >= 0) tiles_[static_cast<std::size_t>(qa)] = a;
  if (qb >= 0) tiles_[static_cast<std::size_t>(qb)] = b;
}

nlohmann::ordered_json TileMapping::to_json(const CutAssignment* cuts) const {
  nlohmann::ordered_json j;
  j["shape"] = {shape_.rows, shape_.cols};
  auto qs = nlohmann::ordered_json::array();
  for (std::size_t q = 0; q < tiles_.size(); ++q) {
    auto e = nlohmann::ordered_json::array({tiles_[q].row, tiles_[q].col});
    if (cuts) e.push_back(std::string(1, to_char((*cuts)[q])));
    qs.push_back(std::move(e));
  }
  j["qubits"] = std::move(qs);
  return j;
}

// ---------------------------------------------------------------------------
// Shape

ArrayShape determine_shape(int n, ArrayShape grid) {
  if (n <= 0) return {1, 1};
  std::optional<ArrayShape> best;
  auto key = [](ArrayShape s) { return std::make_tuple(s.rows + s.cols, std::abs(s.rows - s.cols), s.rows); };
  for (int r = 1; r <= grid.rows; ++r) {
    for (int c = 1; c <= grid.cols; ++c) {
      if (r * c < n || r * c - n >= std::min(r, c)) continue;
      const ArrayShape s{r, c};
      if (!best || key(s) < key(*best)) best = s;
    }
  }
  if (!best) {
    throw InfeasibleError("no " + std::to_string(n) + "-qubit tile array fits a " + std::to_string(grid.rows) +
                          "x" + std::to_string(grid.cols) + " tile grid");
  }
  return *best;
}

long long mapping_cost(const TileMapping& mapping, const CommGraph& comm) {
  if (comm.num_qubits() > mapping.num_qubits()) throw ValidationError("mapping_cost: unmapped qubit");
  long long f = 0;
  for (const auto& [e, w] : comm.edges()) {
    const auto a = mapping.tile(e.first), b = mapping.tile(e.second);
    f += static_cast<long long>(w) * (std::abs(a.row - b.row) + std::abs(a.col - b.col));
  }
  return f;
}

// ---------------------------------------------------------------------------
// Mapping establishing

namespace {

struct Region {
  int row, col, rows, cols;
  int size() const { return rows * cols; }
};

class Bisector {
 public:
  Bisector(const CommGraph& comm, ArrayShape shape, Rng& rng)
      : comm_(comm), rng_(rng), tiles_(static_cast<std::size_t>(comm.num_qubits())), shape_(shape) {}

  TileMapping run() {
    std::vector<QubitId> all(static_cast<std::size_t>(comm_.num_qubits()));
    for (std::size_t q = 0; q < all.size(); ++q) all[q] = static_cast<QubitId>(q);
    split(all, {0, 0, shape_.rows, shape_.cols});
    return TileMapping(shape_, tiles_);
  }

 private:
  void split(std::vector<QubitId> qs, Region reg) {
    if (qs.empty()) return;
    if (reg.size() == 1) {
      tiles_[static_cast<std::size_t>(qs.front())] = {reg.row, reg.col};
      return;
    }
    Region a = reg, b = reg;
    if (reg.rows >= reg.cols) {
      a.rows = reg.rows / 2;
      b.row = reg.row + a.rows;
      b.rows = reg.rows - a.rows;
    } else {
      a.cols = reg.cols / 2;
      b.col = reg.col + a.cols;
      b.cols = reg.cols - a.cols;
    }
    const int n = static_cast<int>(qs.size());
    int na = (n * a.size() + reg.size() / 2) / reg.size();
    na = std::clamp(na, std::max(0, n - b.size()), std::min(n, a.size()));

    rng_.shuffle(qs);
    std::vector<char> side(static_cast<std::size_t>(comm_.num_qubits()), -1);
    for (int i = 0; i < n; ++i) side[qs[i]] = i < na ? 0 : 1;
    refine(qs, side);
    std::vector<QubitId> qa, qb;
    for (QubitId q : qs) (side[q] == 0 ? qa : qb).push_back(q);
    split(std::move(qa), a);
    split(std::move(qb), b);
  }

  // Kernighan-Lin style balanced pair swaps while the cut weight drops.
  void refine(const std::vector<QubitId>& qs, std::vector<char>& side) {
    auto d_value = [&](QubitId v) {
      int ext = 0, in = 0;
      for (auto [u, w] : comm_.neighbours(v)) {
        if (side[u] < 0) continue;
        (side[u] == side[v] ? in : ext) += w;
      }
      return ext - in;
    };
    for (int pass = 0; pass < 64; ++pass) {
      int best_gain = 0;
      QubitId bx = -1, by = -1;
      for (QubitId x : qs) {
        if (side[x] != 0) continue;
        const int dx = d_value(x);
        for (QubitId y : qs) {
          if (side[y] != 1) continue;
          const int gain = dx + d_value(y) - 2 * comm_.weight(x, y);
          if (gain > best_gain) {
            best_gain = gain;
            bx = x;
            by = y;
          }
        }
      }
      if (bx < 0) return;
      std::swap(side[bx], side[by]);
    }
  }

  const CommGraph& comm_;
  Rng& rng_;
  std::vector<TileCoord> tiles_;
  ArrayShape shape_;
};

// First-improvement swaps of tile contents (empty tiles included) until f
// reaches a local minimum.
void swap_refine(TileMapping& m, const CommGraph& comm) {
  const ArrayShape s = m.shape();
  auto dist = [](TileCoord a, TileCoord b) { return std::abs(a.row - b.row) + std::abs(a.col - b.col); };
  auto delta = [&](QubitId q, TileCoord from, TileCoord to, QubitId other) {
    long long d = 0;
    if (q < 0) return d;
    for (auto [u, w] : comm.neighbours(q)) {
      if (u == other) continue;
      const TileCoord tu = m.tile(u);
      d += static_cast<long long>(w) * (dist(to, tu) - dist(from, tu));
    }
    return d;
  };
  std::vector<TileCoord> cells;
  for (int r = 0; r < s.rows; ++r)
    for (int c = 0; c < s.cols; ++c) cells.push_back({r, c});
  for (bool improved = true; improved;) {
    improved = false;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      for (std::size_t j = i + 1; j < cells.size(); ++j) {
        const QubitId qa = m.qubit_at(cells[i]), qb = m.qubit_at(cells[j]);
        if (qa < 0 && qb < 0) continue;
        if (delta(qa, cells[i], cells[j], qb) + delta(qb, cells[j], cells[i], qa) < 0) {
          m.swap_tiles(cells[i], cells[j]);
          improved = true;
        }
      }
    }
  }
}

// Swap search on (penalty, f) for mappings that leave some pair unroutable.
void repair(TileMapping& m, const CommGraph& comm, const std::function<int(const TileMapping&)>& penalty) {
  const ArrayShape s = m.shape();
  std::vector<TileCoord> cells;
  for (int r = 0; r < s.rows; ++r)
    for (int c = 0; c < s.cols; ++c) cells.push_back({r, c});
  auto score = [&](const TileMapping& x) { return std::make_pair(penalty(x), mapping_cost(x, comm)); };
  auto best = score(m);
  int budget = 4000;
  for (bool improved = true; improved && best.first > 0 && budget > 0;) {
    improved = false;
    for (std::size_t i = 0; i < cells.size() && budget > 0; ++i) {
      for (std::size_t j = i + 1; j < cells.size() && budget > 0; ++j) {
        if (m.qubit_at(cells[i]) < 0 && m.qubit_at(cells[j]) < 0) continue;
        m.swap_tiles(cells[i], cells[j]);
        --budget;
        const auto sc = score(m);
        if (sc < best) {
          best = sc;
          improved = true;
        } else {
          m.swap_tiles(cells[i], cells[j]);
        }
      }
    }
  }
}

}  // namespace

TileMapping establish_mapping(const CommGraph& comm, ArrayShape shape, const MappingOptions& options) {
  if (options.trials < 1) throw ValidationError("establish_mapping: trials must be >= 1");
  const int n = comm.num_qubits();
  if (shape.rows * shape.cols < n) throw ValidationError("establish_mapping: shape too small for the qubits");
  std::vector<TileMapping> candidates;
  for (int t = 0; t < options.trials; ++t) {
    Rng rng(options.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(t));
    auto m = Bisector(comm, shape, rng).run();
    swap_refine(m, comm);
    candidates.push_back(std::move(m));
  }
  auto snake = baseline_mapping(BaselineMapping::TrivialSnake, n, shape);
  candidates.push_back(snake);
  swap_refine(snake, comm);
  candidates.push_back(std::move(snake));

  auto score = [&](const TileMapping& m) {
    return std::make_pair(options.penalty ? options.penalty(m) : 0, mapping_cost(m, comm));
  };
  std::size_t best = 0;
  auto best_score = score(candidates[0]);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const auto sc = score(candidates[i]);
    if (sc < best_score) {
      best_score = sc;
      best = i;
    }
  }
  TileMapping out = candidates[best];
  if (best_score.first > 0) repair(out, comm, options.penalty);
  return out;
}

// ---------------------------------------------------------------------------
// Bandwidth adjusting

std::vector<int> corridor_loads(const ChipLayout& layout, const TileMapping& mapping, const LogicalCircuit& circuit) {
  const RoutingGraph graph(layout, mapping.tiles());
  const Occupancy idle(graph);
  const int strips = layout.rows() + layout.cols() + 2;
  std::map<std::pair<int, int>, int> per_position;
  std::map<std::pair<QubitId, QubitId>, std::optional<RoutePath>> cache;
  for (const auto& g : circuit.gates()) {
    const auto key = std::minmax(g.control, g.target);
    auto it = cache.find(key);
    if (it == cache.end()) {
      it = cache.emplace(key, find_path(graph, idle, mapping.tile(key.first), mapping.tile(key.second))).first;
    }
    if (!it->second) continue;
    for (int node : it->second->nodes)
      for (const auto& pos : graph.corridor_positions(node)) ++per_position[pos];
  }
  std::vector<int> loads(static_cast<std::size_t>(strips), 0);
  for (const auto& [pos, count] : per_position) loads[pos.first] = std::max(loads[pos.first], count);
  return loads;
}

ChipLayout adjust_bandwidth(const ChipLayout& layout, const TileMapping& mapping, const LogicalCircuit& circuit) {
  ChipLayout out = layout;
  if (out.slack_rows() <= 0 && out.slack_cols() <= 0) return out;
  const int rows = out.rows();
  const int strips = rows + out.cols() + 2;
  auto bandwidth = [&](int s) { return s <= rows ? out.row_strip_bandwidth(s) : out.col_strip_bandwidth(s - rows - 1); };
  auto loads = corridor_loads(out, mapping, circuit);
  std::vector<char> exhausted(static_cast<std::size_t>(strips), 0);
  for (;;) {
    int pick = -1;
    for (int s = 0; s < strips; ++s) {
      if (exhausted[s] || loads[s] == 0) continue;
      if (pick < 0) {
        pick = s;
        continue;
      }
      // Compare load / bandwidth without division; bandwidth 0 ranks first.
      const long long lhs = static_cast<long long>(loads[s]) * bandwidth(pick);
      const long long rhs = static_cast<long long>(loads[pick]) * bandwidth(s);
      const bool better = bandwidth(s) == 0 ? (bandwidth(pick) != 0 || loads[s] > loads[pick]) : lhs > rhs;
      if (better) pick = s;
    }
    if (pick < 0) break;
    const int before = bandwidth(pick);
    const bool ok = pick <= rows ? out.widen_row_strip(pick) : out.widen_col_strip(pick - rows - 1);
    if (!ok) {
      exhausted[pick] = 1;
      continue;
    }
    if (before == 0) loads = corridor_loads(out, mapping, circuit);
  }
  return out;
}

int unroutable_pairs(const ChipLayout& layout, const TileMapping& mapping, const CommGraph& comm) {
  const RoutingGraph graph(layout, mapping.tiles());
  const Occupancy idle(graph);
  int bad = 0;
  for (const auto& [e, w] : comm.edges())
    if (!find_path(graph, idle, mapping.tile(e.first), mapping.tile(e.second))) ++bad;
  return bad;
}

// ---------------------------------------------------------------------------
// Cut types

namespace {

CutAssignment colouring_to_cuts(const std::vector<int>& colour) {
  CutAssignment cuts(colour.size(), CutType::X);
  for (std::size_t q = 0; q < colour.size(); ++q) cuts[q] = colour[q] == 1 ? CutType::Z : CutType::X;
  return cuts;
}

}  // namespace

CutAssignment init_cut_types(const LogicalCircuit& circuit) {
  const int n = circuit.num_qubits();
  std::vector<std::pair<int, int>> edges;
  for (const auto& g : circuit.gates()) edges.emplace_back(g.control, g.target);
  std::vector<int> colour;
  if (two_colour(n, edges, colour)) return colouring_to_cuts(colour);

  // Peel DAG fronts, adding gates while the sub-graph stays bipartite. The
  // parity union-find answers each insertion in near-constant time.
  std::vector<int> parent(static_cast<std::size_t>(n)), parity(static_cast<std::size_t>(n), 0);
  for (int q = 0; q < n; ++q) parent[q] = q;
  std::function<std::pair<int, int>(int)> find = [&](int x) -> std::pair<int, int> {
    if (parent[x] == x) return {x, 0};
    auto [root, p] = find(parent[x]);
    parent[x] = root;
    parity[x] ^= p;
    return {root, parity[x]};
  };
  const GateDag dag(circuit);
  std::vector<int> waiting(static_cast<std::size_t>(dag.size()));
  std::vector<GateId> front;
  for (GateId g = 0; g < dag.size(); ++g) {
    waiting[g] = static_cast<int>(dag.parents(g).size());
    if (waiting[g] == 0) front.push_back(g);
  }
  std::vector<std::pair<int, int>> prefix;
  bool stop = false;
  while (!front.empty() && !stop) {
    std::vector<GateId> next;
    for (GateId g : front) {
      const auto& c = circuit.gate(g);
      auto [ra, pa] = find(c.control);
      auto [rb, pb] = find(c.target);
      if (ra == rb) {
        if (pa == pb) {
          stop = true;
          break;
        }
      } else {
        parent[ra] = rb;
        parity[ra] = pa ^ pb ^ 1;
      }
      prefix.emplace_back(c.control, c.target);
      for (GateId ch : dag.children(g))
        if (--waiting[ch] == 0) next.push_back(ch);
    }
    std::sort(next.begin(), next.end());
    front = std::move(next);
  }
  two_colour(n, prefix, colour);
  return colouring_to_cuts(colour);
}

TileMapping baseline_mapping(BaselineMapping kind, int n, ArrayShape shape, std::uint64_t seed) {
  if (shape.rows * shape.cols < n) throw ValidationError("baseline_mapping: shape too small");
  std::vector<TileCoord> order;
  for (int r = 0; r < shape.rows; ++r) {
    for (int k = 0; k < shape.cols; ++k) order.push_back({r, r % 2 == 0 ? k : shape.cols - 1 - k});
  }
  if (kind == BaselineMapping::Random) {
    Rng rng(seed);
    rng.shuffle(order);
  }
  order.resize(static_cast<std::size_t>(n));
  return TileMapping(shape, std::move(order));
}

long long cut_weight(const CommGraph& comm, const CutAssignment& cuts) {
  long long w = 0;
  for (const auto& [e, weight] : comm.edges())
    if (cuts.at(static_cast<std::size_t>(e.first)) != cuts.at(static_cast<std::size_t>(e.second))) w += weight;
  return w;
}

CutAssignment baseline_cuts(BaselineCuts kind, const CommGraph& comm, std::uint64_t seed) {
  Rng rng(seed);
  CutAssignment cuts(static_cast<std::size_t>(comm.num_qubits()));
  for (auto& c : cuts) c = rng.coin() ? CutType::Z : CutType::X;
  if (kind == BaselineCuts::Random) return cuts;
  for (bool improved = true; improved;) {
    improved = false;
    for (QubitId v = 0; v < comm.num_qubits(); ++v) {
      int gain = 0;
      for (auto [u, w] : comm.neighbours(v)) gain += cuts[u] == cuts[v] ? w : -w;
      if (gain > 0) {
        cuts[v] = flip(cuts[v]);
        improved = true;
      }
    }
  }
  return cuts;
}

}  // namespace surfc
