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

#include "surfc/circuit.hpp"

#include <algorithm>
#include <queue>

#include "surfc/error.hpp"

namespace surfc {

LogicalCircuit::LogicalCircuit(int num_qubits) : n_(num_qubits) {
  if (num_qubits < 0) throw ValidationError("negative qubit count");
}

GateId LogicalCircuit::add_cnot(QubitId control, QubitId target) {
  if (control < 0 || control >= n_ || target < 0 || target >= n_) {
    throw ValidationError("cx operand out of range: " + std::to_string(control) + "," +
                          std::to_string(target) + " with n=" + std::to_string(n_));
  }
  if (control == target) {
    throw ValidationError("cx with equal operands on qubit " + std::to_string(control));
  }
  const GateId id = num_gates();
  gates_.push_back({id, control, target});
  return id;
}

nlohmann::ordered_json LogicalCircuit::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n_;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& g : gates_) arr.push_back({g.id, g.control, g.target});
  j["gates"] = std::move(arr);
  return j;
}

LogicalCircuit LogicalCircuit::from_json(const nlohmann::json& j) {
  LogicalCircuit c(j.at("n").get<int>());
  for (const auto& g : j.at("gates")) {
    const GateId id = c.add_cnot(g.at(1).get<int>(), g.at(2).get<int>());
    if (g.at(0).get<int>() != id) throw ValidationError("gate ids must be dense and ordered");
  }
  return c;
}

GateDag::GateDag(const LogicalCircuit& circuit)
    : parents_(static_cast<std::size_t>(circuit.num_gates())),
      children_(static_cast<std::size_t>(circuit.num_gates())),
      asap_(static_cast<std::size_t>(circuit.num_gates()), 1),
      alap_(static_cast<std::size_t>(circuit.num_gates()), 1) {
  std::vector<GateId> last(static_cast<std::size_t>(circuit.num_qubits()), -1);
  for (const auto& g : circuit.gates()) {
    for (QubitId q : {g.control, g.target}) {
      const GateId prev = last[static_cast<std::size_t>(q)];
      if (prev >= 0) {
        auto& ps = parents_[static_cast<std::size_t>(g.id)];
        // cx(a,b) followed by cx(a,b) shares both qubits; keep one edge.
        if (std::find(ps.begin(), ps.end(), prev) == ps.end()) {
          ps.push_back(prev);
          children_[static_cast<std::size_t>(prev)].push_back(g.id);
        }
      }
      last[static_cast<std::size_t>(q)] = g.id;
    }
  }
  const int g = size();
  for (GateId v = 0; v < g; ++v) {
    for (GateId p : parents(v)) asap_[v] = std::max(asap_[v], asap_[p] + 1);
    depth_ = std::max(depth_, asap_[v]);
  }
  for (GateId v = g - 1; v >= 0; --v) {
    alap_[v] = depth_;
    for (GateId c : children(v)) alap_[v] = std::min(alap_[v], alap_[c] - 1);
  }
}

std::vector<std::pair<GateId, GateId>> GateDag::edges() const {
  std::vector<std::pair<GateId, GateId>> out;
  for (GateId u = 0; u < size(); ++u)
    for (GateId v : children(u)) out.emplace_back(u, v);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GateId> GateDag::topological_order() const {
  std::vector<GateId> order(static_cast<std::size_t>(size()));
  for (GateId i = 0; i < size(); ++i) order[i] = i;
  return order;
}

CommGraph::CommGraph(const LogicalCircuit& circuit)
    : n_(circuit.num_qubits()), adj_(static_cast<std::size_t>(circuit.num_qubits())) {
  for (const auto& g : circuit.gates()) add(g.control, g.target);
}

CommGraph::CommGraph(int num_qubits, const std::vector<std::pair<QubitId, QubitId>>& edges)
    : n_(num_qubits), adj_(static_cast<std::size_t>(num_qubits)) {
  for (auto [a, b] : edges) {
    if (a == b || a < 0 || b < 0 || a >= n_ || b >= n_) throw ValidationError("bad comm edge");
    add(a, b);
  }
}

void CommGraph::add(QubitId a, QubitId b) {
  const auto key = std::minmax(a, b);
  const int w = ++edges_[{key.first, key.second}];
  auto bump = [&](QubitId from, QubitId to) {
    auto& list = adj_[static_cast<std::size_t>(from)];
    for (auto& [nb, wt] : list) {
      if (nb == to) {
        wt = w;
        return;
      }
    }
    list.emplace_back(to, w);
  };
  bump(a, b);
  bump(b, a);
}

int CommGraph::weight(QubitId a, QubitId b) const {
  const auto key = std::minmax(a, b);
  auto it = edges_.find({key.first, key.second});
  return it == edges_.end() ? 0 : it->second;
}

int CommGraph::total_weight() const {
  int s = 0;
  for (const auto& [e, w] : edges_) s += w;
  return s;
}

GateDag build_dag(const LogicalCircuit& circuit) { return GateDag(circuit); }
CommGraph build_comm_graph(const LogicalCircuit& circuit) { return CommGraph(circuit); }

bool two_colour(int num_vertices, const std::vector<std::pair<int, int>>& edges,
                std::vector<int>& colour) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(num_vertices));
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  colour.assign(static_cast<std::size_t>(num_vertices), -1);
  bool ok = true;
  for (int s = 0; s < num_vertices; ++s) {
    if (colour[s] >= 0) continue;
    colour[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : adj[u]) {
        if (colour[v] < 0) {
          colour[v] = 1 - colour[u];
          q.push(v);
        } else if (colour[v] == colour[u]) {
          ok = false;
        }
      }
    }
  }
  return ok;
}

}  // namespace surfc
