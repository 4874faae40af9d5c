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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "surfc/chip.hpp"
#include "surfc/circuit.hpp"

namespace surfc {

enum class CutType : std::uint8_t { X, Z };

inline CutType flip(CutType c) { return c == CutType::X ? CutType::Z : CutType::X; }
inline char to_char(CutType c) { return c == CutType::X ? 'X' : 'Z'; }

/// Cut type per qubit (double defect only).
using CutAssignment = std::vector<CutType>;

/// Injective qubit -> tile assignment on a tile array.
class TileMapping {
 public:
  TileMapping() = default;
  /// Throws ValidationError if a tile is outside `shape` or used twice.
  TileMapping(ArrayShape shape, std::vector<TileCoord> tiles);

  ArrayShape shape() const { return shape_; }
  int num_qubits() const { return static_cast<int>(tiles_.size()); }
  TileCoord tile(QubitId q) const { return tiles_.at(static_cast<std::size_t>(q)); }
  const std::vector<TileCoord>& tiles() const { return tiles_; }
  /// Qubit on a tile, or -1.
  QubitId qubit_at(TileCoord t) const;

  void swap_tiles(TileCoord a, TileCoord b);
  bool operator==(const TileMapping& o) const { return shape_ == o.shape_ && tiles_ == o.tiles_; }

  /// {"shape":[r,c], "qubits":[[row, col, cut], ...]}; cut is omitted
  /// without an assignment.
  nlohmann::ordered_json to_json(const CutAssignment* cuts = nullptr) const;

 private:
  ArrayShape shape_;
  std::vector<TileCoord> tiles_;
  std::vector<QubitId> occupant_;
};

/// Minimum-perimeter r x c array holding n qubits without an entirely empty
/// row or column. Ties: smaller |r - c|, then fewer rows. Throws
/// InfeasibleError when nothing fits the grid.
ArrayShape determine_shape(int n, ArrayShape grid);

/// f = sum over interacting pairs of weight x Manhattan tile distance.
long long mapping_cost(const TileMapping& mapping, const CommGraph& comm);

struct MappingOptions {
  int trials = 16;
  std::uint64_t seed = 1;
  /// Optional count of gates that cannot be routed on an idle chip; mappings
  /// are ranked by (penalty, f) and repaired towards penalty 0.
  std::function<int(const TileMapping&)> penalty;
};

/// Randomised recursive bisection followed by pairwise-swap refinement of f;
/// the best of `trials` runs (and of the snake layout) wins.
TileMapping establish_mapping(const CommGraph& comm, ArrayShape shape, const MappingOptions& options = {});

/// Widens corridors carrying the most pre-executed shortest routes, one
/// bandwidth step at a time, while slack remains. Never narrows a corridor.
ChipLayout adjust_bandwidth(const ChipLayout& layout, const TileMapping& mapping, const LogicalCircuit& circuit);

/// Per-corridor count of pre-executed routes (max over the corridor's
/// segments): row strips first, then column strips.
std::vector<int> corridor_loads(const ChipLayout& layout, const TileMapping& mapping, const LogicalCircuit& circuit);

/// Interacting pairs with no route on the idle chip (lattice surgery mappings
/// can wall a tile in).
int unroutable_pairs(const ChipLayout& layout, const TileMapping& mapping, const CommGraph& comm);

/// Two-colouring of the communication graph when bipartite, otherwise of the
/// largest DAG-front prefix that stays bipartite; other qubits get X.
CutAssignment init_cut_types(const LogicalCircuit& circuit);

enum class BaselineMapping { TrivialSnake, Random };
TileMapping baseline_mapping(BaselineMapping kind, int n, ArrayShape shape, std::uint64_t seed = 0);

enum class BaselineCuts { Random, MaxCut };
CutAssignment baseline_cuts(BaselineCuts kind, const CommGraph& comm, std::uint64_t seed = 0);

/// Sum of weights on edges whose endpoints carry different cuts.
long long cut_weight(const CommGraph& comm, const CutAssignment& cuts);

}  // namespace surfc
