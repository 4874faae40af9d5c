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

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace surfc {

enum class Model { DoubleDefect, LatticeSurgery };

std::string to_string(Model m);
Model parse_model(const std::string& s);

/// Physical chip: m1 x m2 physical qubits protected at code distance d.
struct ChipSpec {
  Model model = Model::DoubleDefect;
  int m1 = 0;
  int m2 = 0;
  int d = 1;
};

/// Position of a tile in the tile grid.
struct TileCoord {
  int row = 0;
  int col = 0;
  auto operator<=>(const TileCoord&) const = default;
};

/// Rows x cols of the logical tile array.
struct ArrayShape {
  int rows = 0;
  int cols = 0;
  bool operator==(const ArrayShape&) const = default;
};

// Geometry along one axis, in physical qubits. A double-defect pitch of 5d
// splits into a core and one lane; a lattice-surgery tile is its own lane.
int ceil_sqrt2_d(int d);
int tile_pitch(Model m, int d);
int tile_core(Model m, int d);
int lane_width(Model m, int d);
/// Smallest corridor width with bandwidth >= b.
int width_for_bandwidth(Model m, int d, int b);

/// floor(W / 2.5d) for double defect, floor(W / ceil(sqrt(2) d)) for lattice
/// surgery. W < 0 or d < 1 throws.
int channel_bandwidth(int width, int d, Model m);

/// floor((b - 1) / 2) + 3 simultaneously routable independent CNOTs; 0 when
/// the chip has no usable channel.
int chip_capacity(int bandwidth);

/// How leftover corridor width is handed out when a layout is derived.
enum class Distribution {
  Uniform,  ///< round-robin until no further bandwidth step fits
  Reserve,  ///< at most one lane per corridor; the rest stays as slack
};

/// Tile grid plus corridors. Horizontal strip i runs above tile row i (strip
/// `rows` is the bottom boundary); vertical strip j runs left of tile column j.
class ChipLayout {
 public:
  ChipLayout() = default;
  ChipLayout(ChipSpec spec, ArrayShape shape, std::vector<int> row_strip_widths,
             std::vector<int> col_strip_widths);

  /// Layout with every corridor, boundary ring included, at exactly bandwidth b.
  /// The physical dims are the tight fit.
  static ChipLayout uniform(Model model, int d, ArrayShape shape, int bandwidth);

  const ChipSpec& spec() const { return spec_; }
  Model model() const { return spec_.model; }
  int d() const { return spec_.d; }
  int rows() const { return shape_.rows; }
  int cols() const { return shape_.cols; }
  ArrayShape shape() const { return shape_; }

  const std::vector<int>& row_strip_widths() const { return row_w_; }
  const std::vector<int>& col_strip_widths() const { return col_w_; }
  int row_strip_bandwidth(int i) const;
  int col_strip_bandwidth(int j) const;

  /// Min bandwidth over existing (non-zero width) corridors; 0 if none.
  int bandwidth() const;
  /// Sum of corridor bandwidths.
  int total_bandwidth() const;
  int capacity() const { return chip_capacity(bandwidth()); }

  /// Physical qubits claimed along each axis (tile cores + corridors).
  int footprint_rows() const;
  int footprint_cols() const;
  int slack_rows() const { return spec_.m1 - footprint_rows(); }
  int slack_cols() const { return spec_.m2 - footprint_cols(); }

  /// Raises one corridor's bandwidth by one step; false if the slack on that
  /// axis does not cover it.
  bool widen_row_strip(int i);
  bool widen_col_strip(int j);
  /// Cost in physical qubits of raising a corridor by one bandwidth step.
  int widen_cost(int width) const;

  nlohmann::ordered_json to_json() const;

 private:
  ChipSpec spec_;
  ArrayShape shape_;
  std::vector<int> row_w_;
  std::vector<int> col_w_;
};

/// Largest tile array that fits the chip (one lane per double-defect tile).
ArrayShape max_tile_grid(const ChipSpec& spec);

/// Packs `shape` onto the chip and distributes the leftover width to the
/// corridors. Throws InfeasibleError if the chip cannot host one tile or the
/// shape does not fit.
ChipLayout derive_layout(const ChipSpec& spec, ArrayShape shape, Distribution mode = Distribution::Uniform);

struct ChipConfig {
  enum class Kind { MinimumViable, FourX, Sufficient, Custom, Bandwidth };
  Kind kind = Kind::MinimumViable;
  int m1 = 0;         ///< Custom only
  int m2 = 0;         ///< Custom only
  int bandwidth = 1;  ///< Bandwidth only

  static ChipConfig parse(const std::string& s);
  std::string to_string() const;
};

/// Square chips of side l = ceil(sqrt n) * core + (ceil(sqrt n) + 1) * W_b
/// with W_b the width of a bandwidth-b corridor.
std::pair<int, int> dims_for_bandwidth(int n, int d, Model model, int bandwidth);

/// Physical dims for a configuration. Sufficient needs `pm`.
std::pair<int, int> config_dims(const ChipConfig& config, int n, int d, Model model,
                                std::optional<int> pm = std::nullopt);

}  // namespace surfc
