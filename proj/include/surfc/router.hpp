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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "surfc/chip.hpp"

namespace surfc {

/// A route through the communication fabric. For double defect the nodes are
/// corridor segments and `vias` the junctions crossed between them; for lattice
/// surgery the nodes are ancilla cells. An empty route is the direct merge of
/// two adjacent lattice-surgery tiles.
struct RoutePath {
  std::vector<int> nodes;
  std::vector<int> vias;

  bool direct() const { return nodes.empty(); }
  int length() const { return static_cast<int>(nodes.size()); }
  /// Every capacitated resource the route holds.
  std::vector<int> resources() const;
  bool operator==(const RoutePath&) const = default;
};

/// Capacitated routing graph of a chip layout.
///
/// Resources are numbered so that node k is resource k; junctions (double
/// defect only) follow the nodes.
class RoutingGraph {
 public:
  struct Arc {
    int to = 0;
    int via = -1;
  };

  /// `occupied` lists the data tiles; lattice-surgery routes avoid them while
  /// unoccupied data slots act as ancilla cells.
  RoutingGraph(const ChipLayout& layout, const std::vector<TileCoord>& occupied);

  const ChipLayout& layout() const { return layout_; }
  Model model() const { return layout_.model(); }
  int num_nodes() const { return static_cast<int>(arcs_.size()); }
  int num_resources() const { return static_cast<int>(capacity_.size()); }
  int capacity(int resource) const { return capacity_[static_cast<std::size_t>(resource)]; }
  const std::vector<Arc>& arcs(int node) const { return arcs_[static_cast<std::size_t>(node)]; }

  /// Nodes a route may start or end on next to `tile`, in N, E, S, W order.
  std::vector<int> terminals(TileCoord tile) const;
  static bool adjacent(TileCoord a, TileCoord b);
  bool is_occupied(TileCoord t) const;

  /// Lattice-surgery cell of a data tile (identity for double defect).
  std::array<int, 2> tile_cell(TileCoord t) const;
  /// Junction coordinates (double defect) or cell coordinates (lattice
  /// surgery) traced by a route, endpoint to endpoint.
  std::vector<std::array<int, 2>> coordinates(const RoutePath& path) const;
  /// True when the route is contiguous and runs from a terminal of `a` to a
  /// terminal of `b` (or is a direct merge of adjacent lattice-surgery tiles).
  bool connects(const RoutePath& path, TileCoord a, TileCoord b) const;

  /// (corridor, position along it) pairs a node lies on. Row strips are
  /// corridors 0..rows, column strips follow. Free data slots lie on none.
  std::vector<std::pair<int, int>> corridor_positions(int node) const;

  /// ASCII picture of the fabric with route k drawn as letter 'a' + k.
  std::string render(const std::vector<RoutePath>& routes) const;

 private:
  void build_double_defect();
  void build_lattice_surgery();
  int add_node(int capacity, std::array<int, 2> a, std::array<int, 2> b);

  ChipLayout layout_;
  std::vector<char> occupied_;  // per tile, row-major
  std::vector<std::vector<Arc>> arcs_;
  std::vector<int> capacity_;
  // Double defect: segment endpoints (junction coords). Lattice surgery: cell
  // coordinate in both slots.
  std::vector<std::array<int, 2>> end_a_;
  std::vector<std::array<int, 2>> end_b_;
  // Double defect: node id of horizontal segment (i, j) / vertical segment
  // (i, j), -1 when the strip has no lane; junction resource ids.
  std::vector<int> hseg_, vseg_, junction_;
  // Lattice surgery: cell grid.
  int cell_rows_ = 0, cell_cols_ = 0;
  std::vector<int> cell_node_;   // -1 for data tiles and unused cells
  std::vector<int> tile_row_cell_, tile_col_cell_;
  std::vector<int> strip_of_cell_row_, strip_of_cell_col_;  // -1 on data rows/cols
};

/// Per-cycle resource usage plus tile reservations.
class Occupancy {
 public:
  explicit Occupancy(const RoutingGraph& graph);

  int used(int resource, int cycle) const;
  /// True if one more route fits on `resource` in every cycle of the window.
  bool resource_free(int resource, int cycle, int duration = 1) const;
  bool path_free(const RoutePath& path, int cycle, int duration = 1) const;
  bool tile_free(TileCoord t, int cycle, int duration = 1) const;

  /// Reserves the route for `duration` cycles. Exceeding a capacity is an
  /// internal invariant violation and throws std::logic_error.
  void commit(const RoutePath& path, int cycle, int duration = 1);
  void release(const RoutePath& path, int cycle, int duration = 1);
  void reserve_tile(TileCoord t, int cycle, int duration = 1);

 private:
  int& slot(int resource, int cycle);
  const RoutingGraph* graph_;
  int cols_;
  std::vector<std::vector<int>> used_;
  std::vector<std::vector<char>> tile_busy_;
};

/// Breadth-first shortest route between two tiles over resources that are
/// free for the whole window. Neighbour order is N, E, S, W. Reserves nothing.
std::optional<RoutePath> find_path(const RoutingGraph& graph, const Occupancy& occupancy, TileCoord a,
                                   TileCoord b, int cycle = 0, int duration = 1);

/// Routes a batch of tile-disjoint pairs simultaneously on an idle chip.
/// Requires |pairs| <= chip_capacity(b); throws ValidationError otherwise.
/// Greedy shortest paths first; blocked pairs break the separating ring by
/// ripping up the routes that saturate a minimum residual cut.
std::vector<RoutePath> route_batch_guaranteed(const RoutingGraph& graph,
                                              const std::vector<std::pair<TileCoord, TileCoord>>& pairs);

/// Every simple route between two tiles with at most `max_length` nodes,
/// ignoring occupancy. Used by the exhaustive checks.
std::vector<RoutePath> enumerate_routes(const RoutingGraph& graph, TileCoord a, TileCoord b, int max_length);

}  // namespace surfc
