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
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace surfc {

using QubitId = int;
using GateId = int;

struct Cnot {
  GateId id = 0;
  QubitId control = 0;
  QubitId target = 0;

  bool touches(QubitId q) const { return control == q || target == q; }
  bool operator==(const Cnot&) const = default;
};

/// A CNOT-only logical circuit. Gate ids are dense and equal to the index.
class LogicalCircuit {
 public:
  LogicalCircuit() = default;
  explicit LogicalCircuit(int num_qubits);

  /// Appends cx(control, target); throws ValidationError on bad operands.
  GateId add_cnot(QubitId control, QubitId target);

  int num_qubits() const { return n_; }
  int num_gates() const { return static_cast<int>(gates_.size()); }
  const std::vector<Cnot>& gates() const { return gates_; }
  const Cnot& gate(GateId g) const { return gates_.at(static_cast<std::size_t>(g)); }

  nlohmann::ordered_json to_json() const;
  static LogicalCircuit from_json(const nlohmann::json& j);
  bool operator==(const LogicalCircuit&) const = default;

 private:
  int n_ = 0;
  std::vector<Cnot> gates_;
};

/// Immediate-dependency DAG over gates: (u, v) iff v is the next gate after u
/// on one of u's qubits.
class GateDag {
 public:
  explicit GateDag(const LogicalCircuit& circuit);

  int size() const { return static_cast<int>(parents_.size()); }
  const std::vector<GateId>& parents(GateId g) const { return parents_[static_cast<std::size_t>(g)]; }
  const std::vector<GateId>& children(GateId g) const { return children_[static_cast<std::size_t>(g)]; }
  std::vector<std::pair<GateId, GateId>> edges() const;

  /// Critical-path length in gates (0 for an empty circuit).
  int depth() const { return depth_; }
  /// 1-based earliest layer of every gate.
  const std::vector<int>& asap() const { return asap_; }
  /// 1-based latest layer of every gate in a depth()-layer schedule.
  const std::vector<int>& alap() const { return alap_; }
  /// Gate ids in program order, which is a topological order.
  std::vector<GateId> topological_order() const;

 private:
  std::vector<std::vector<GateId>> parents_;
  std::vector<std::vector<GateId>> children_;
  std::vector<int> asap_;
  std::vector<int> alap_;
  int depth_ = 0;
};

/// Undirected, weighted qubit interaction graph.
class CommGraph {
 public:
  explicit CommGraph(const LogicalCircuit& circuit);
  CommGraph(int num_qubits, const std::vector<std::pair<QubitId, QubitId>>& edges);

  int num_qubits() const { return n_; }
  /// Weight of {a, b}; 0 when absent.
  int weight(QubitId a, QubitId b) const;
  /// Edges as ((a, b), weight) with a < b, sorted.
  const std::map<std::pair<QubitId, QubitId>, int>& edges() const { return edges_; }
  const std::vector<std::pair<QubitId, int>>& neighbours(QubitId q) const {
    return adj_[static_cast<std::size_t>(q)];
  }
  int total_weight() const;

 private:
  void add(QubitId a, QubitId b);
  int n_ = 0;
  std::map<std::pair<QubitId, QubitId>, int> edges_;
  std::vector<std::vector<std::pair<QubitId, int>>> adj_;
};

GateDag build_dag(const LogicalCircuit& circuit);
CommGraph build_comm_graph(const LogicalCircuit& circuit);

/// Reads an OpenQASM 2.0 subset and keeps only the cx structure.
LogicalCircuit parse_qasm(std::istream& in);
LogicalCircuit parse_qasm(std::string_view text);
LogicalCircuit load_qasm_file(const std::string& path);

/// Two-colours a graph given as an edge list. Returns false when an odd cycle
/// exists. Isolated vertices get colour 0.
bool two_colour(int num_vertices, const std::vector<std::pair<int, int>>& edges,
                std::vector<int>& colour);

}  // namespace surfc
