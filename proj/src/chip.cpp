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

#include "surfc/chip.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "surfc/error.hpp"

namespace surfc {

std::string to_string(Model m) { return m == Model::DoubleDefect ? "dd" : "ls"; }

Model parse_model(const std::string& s) {
  if (s == "dd" || s == "double-defect") return Model::DoubleDefect;
  if (s == "ls" || s == "lattice-surgery") return Model::LatticeSurgery;
  throw ValidationError("unknown model '" + s + "' (expected dd or ls)");
}

int ceil_sqrt2_d(int d) {
  // Smallest s with s^2 >= 2 d^2.
  const long long target = 2LL * d * d;
  long long s = 0;
  while (s * s < target) ++s;
  return static_cast<int>(s);
}

int tile_pitch(Model m, int d) { return m == Model::DoubleDefect ? 5 * d : ceil_sqrt2_d(d); }

int tile_core(Model m, int d) { return m == Model::DoubleDefect ? (5 * d) / 2 : ceil_sqrt2_d(d); }

int lane_width(Model m, int d) { return m == Model::DoubleDefect ? (5 * d + 1) / 2 : ceil_sqrt2_d(d); }

int width_for_bandwidth(Model m, int d, int b) {
  if (b <= 0) return 0;
  // ceil(b * 2.5d) for double defect.
  return m == Model::DoubleDefect ? (b * 5 * d + 1) / 2 : b * ceil_sqrt2_d(d);
}

int channel_bandwidth(int width, int d, Model m) {
  if (width < 0 || d < 1) throw ValidationError("channel_bandwidth: need W >= 0 and d >= 1");
  if (m == Model::DoubleDefect) return (2 * width) / (5 * d);
  return width / ceil_sqrt2_d(d);
}

int chip_capacity(int bandwidth) {
  if (bandwidth <= 0) return 0;
  return (bandwidth - 1) / 2 + 3;
}

ChipLayout::ChipLayout(ChipSpec spec, ArrayShape shape, std::vector<int> row_strip_widths,
                       std::vector<int> col_strip_widths)
    : spec_(spec), shape_(shape), row_w_(std::move(row_strip_widths)), col_w_(std::move(col_strip_widths)) {
  if (static_cast<int>(row_w_.size()) != shape_.rows + 1 || static_cast<int>(col_w_.size()) != shape_.cols + 1) {
    throw ValidationError("layout: strip count must be tiles + 1 per axis");
  }
  if (footprint_rows() > spec_.m1 || footprint_cols() > spec_.m2) {
    throw ValidationError("layout claims more physical qubits than the chip has");
  }
}

ChipLayout ChipLayout::uniform(Model model, int d, ArrayShape shape, int bandwidth) {
  const int w = width_for_bandwidth(model, d, bandwidth);
  const int core = tile_core(model, d);
  ChipSpec spec{model, shape.rows * core + (shape.rows + 1) * w, shape.cols * core + (shape.cols + 1) * w, d};
  return ChipLayout(spec, shape, std::vector<int>(static_cast<std::size_t>(shape.rows + 1), w),
                    std::vector<int>(static_cast<std::size_t>(shape.cols + 1), w));
}

int ChipLayout::row_strip_bandwidth(int i) const { return channel_bandwidth(row_w_.at(i), spec_.d, spec_.model); }
int ChipLayout::col_strip_bandwidth(int j) const { return channel_bandwidth(col_w_.at(j), spec_.d, spec_.model); }

int ChipLayout::bandwidth() const {
  int b = -1;
  for (int i = 0; i <= rows(); ++i)
    if (row_w_[i] > 0) b = b < 0 ? row_strip_bandwidth(i) : std::min(b, row_strip_bandwidth(i));
  for (int j = 0; j <= cols(); ++j)
    if (col_w_[j] > 0) b = b < 0 ? col_strip_bandwidth(j) : std::min(b, col_strip_bandwidth(j));
  return std::max(b, 0);
}

int ChipLayout::total_bandwidth() const {
  int s = 0;
  for (int i = 0; i <= rows(); ++i) s += row_strip_bandwidth(i);
  for (int j = 0; j <= cols(); ++j) s += col_strip_bandwidth(j);
  return s;
}

int ChipLayout::footprint_rows() const {
  return rows() * tile_core(spec_.model, spec_.d) + std::accumulate(row_w_.begin(), row_w_.end(), 0);
}

int ChipLayout::footprint_cols() const {
  return cols() * tile_core(spec_.model, spec_.d) + std::accumulate(col_w_.begin(), col_w_.end(), 0);
}

int ChipLayout::widen_cost(int width) const {
  const int b = channel_bandwidth(width, spec_.d, spec_.model);
  return width_for_bandwidth(spec_.model, spec_.d, b + 1) - width;
}

bool ChipLayout::widen_row_strip(int i) {
  const int cost = widen_cost(row_w_.at(i));
  if (cost > slack_rows()) return false;
  row_w_[i] += cost;
  return true;
}

bool ChipLayout::widen_col_strip(int j) {
  const int cost = widen_cost(col_w_.at(j));
  if (cost > slack_cols()) return false;
  col_w_[j] += cost;
  return true;
}

nlohmann::ordered_json ChipLayout::to_json() const {
  nlohmann::ordered_json j;
  j["model"] = surfc::to_string(spec_.model);
  j["d"] = spec_.d;
  j["m1"] = spec_.m1;
  j["m2"] = spec_.m2;
  j["rows"] = rows();
  j["cols"] = cols();
  j["tile_core"] = tile_core(spec_.model, spec_.d);
  j["lane_width"] = lane_width(spec_.model, spec_.d);
  auto strips = [&](const std::vector<int>& w) {
    auto arr = nlohmann::ordered_json::array();
    for (int x : w) arr.push_back({{"width", x}, {"bandwidth", channel_bandwidth(x, spec_.d, spec_.model)}});
    return arr;
  };
  j["row_strips"] = strips(row_w_);
  j["col_strips"] = strips(col_w_);
  j["bandwidth"] = bandwidth();
  j["total_bandwidth"] = total_bandwidth();
  j["capacity"] = capacity();
  j["slack"] = {slack_rows(), slack_cols()};
  return j;
}

ArrayShape max_tile_grid(const ChipSpec& spec) {
  const int p = tile_pitch(spec.model, spec.d);
  return {spec.m1 / p, spec.m2 / p};
}

namespace {

std::vector<int> distribute(const ChipLayout& probe, int tiles, int extent, Distribution mode) {
  std::vector<int> w(static_cast<std::size_t>(tiles + 1), 0);
  int remaining = extent - tiles * tile_core(probe.model(), probe.d());
  // Round-robin, leading strips first; stop at the first step that no longer fits.
  for (int pass = 0;; ++pass) {
    if (mode == Distribution::Reserve && pass == 1) break;
    for (auto& x : w) {
      const int cost = probe.widen_cost(x);
      if (cost > remaining) return w;
      x += cost;
      remaining -= cost;
    }
  }
  return w;
}

}  // namespace

ChipLayout derive_layout(const ChipSpec& spec, ArrayShape shape, Distribution mode) {
  if (spec.d < 1) throw ValidationError("code distance must be >= 1");
  const int p = tile_pitch(spec.model, spec.d);
  if (spec.m1 < p || spec.m2 < p) throw InfeasibleError("chip too small for one tile");
  const ArrayShape grid = max_tile_grid(spec);
  if (shape.rows < 1 || shape.cols < 1 || shape.rows > grid.rows || shape.cols > grid.cols) {
    throw InfeasibleError("tile array " + std::to_string(shape.rows) + "x" + std::to_string(shape.cols) +
                          " does not fit a " + std::to_string(grid.rows) + "x" + std::to_string(grid.cols) +
                          " tile grid");
  }
  // widen_cost only depends on model and d.
  const ChipLayout probe(ChipSpec{spec.model, 0, 0, spec.d}, ArrayShape{0, 0}, {0}, {0});
  auto rows = distribute(probe, shape.rows, spec.m1, mode);
  auto cols = distribute(probe, shape.cols, spec.m2, mode);
  return ChipLayout(spec, shape, std::move(rows), std::move(cols));
}

ChipConfig ChipConfig::parse(const std::string& s) {
  ChipConfig c;
  if (s == "min") return c;
  if (s == "4x") {
    c.kind = Kind::FourX;
    return c;
  }
  if (s == "sufficient") {
    c.kind = Kind::Sufficient;
    return c;
  }
  auto digits = [](const std::string& t) {
    return !t.empty() && t.size() < 9 &&
           std::all_of(t.begin(), t.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
  };
  if (s.rfind("bw", 0) == 0 && digits(s.substr(2))) {
    c.kind = Kind::Bandwidth;
    c.bandwidth = std::stoi(s.substr(2));
    if (c.bandwidth < 1) throw ValidationError("bandwidth must be >= 1");
    return c;
  }
  const auto x = s.find('x');
  if (x != std::string::npos && digits(s.substr(0, x)) && digits(s.substr(x + 1))) {
    c.kind = Kind::Custom;
    c.m1 = std::stoi(s.substr(0, x));
    c.m2 = std::stoi(s.substr(x + 1));
    if (c.m1 < 1 || c.m2 < 1) throw ValidationError("chip dimensions must be positive");
    return c;
  }
  throw ValidationError("unknown chip config '" + s + "' (min|4x|sufficient|bw<k>|WxH)");
}

std::string ChipConfig::to_string() const {
  switch (kind) {
    case Kind::MinimumViable: return "min";
    case Kind::FourX: return "4x";
    case Kind::Sufficient: return "sufficient";
    case Kind::Bandwidth: return "bw" + std::to_string(bandwidth);
    case Kind::Custom: return std::to_string(m1) + "x" + std::to_string(m2);
  }
  return "?";
}

namespace {
int ceil_sqrt(int n) {
  int s = 0;
  while (s * s < n) ++s;
  return s;
}
}  // namespace

std::pair<int, int> dims_for_bandwidth(int n, int d, Model model, int bandwidth) {
  const int s = std::max(1, ceil_sqrt(n));
  const int l = s * tile_core(model, d) + (s + 1) * width_for_bandwidth(model, d, bandwidth);
  return {l, l};
}

std::pair<int, int> config_dims(const ChipConfig& config, int n, int d, Model model, std::optional<int> pm) {
  if (n < 1) throw ValidationError("config_dims: need n >= 1");
  const int s = ceil_sqrt(n);
  switch (config.kind) {
    case ChipConfig::Kind::MinimumViable: {
      const int l = s * tile_pitch(model, d);
      return {l, l};
    }
    case ChipConfig::Kind::FourX: {
      const int l = model == Model::LatticeSurgery ? s * 5 * d : 2 * s * 5 * d;
      return {l, l};
    }
    case ChipConfig::Kind::Sufficient: {
      if (!pm) throw ValidationError("sufficient chip configuration needs the parallelism estimate");
      const int b = *pm <= 3 ? 1 : 2 * (*pm - 3) + 1;
      return dims_for_bandwidth(n, d, model, b);
    }
    case ChipConfig::Kind::Bandwidth:
      return dims_for_bandwidth(n, d, model, config.bandwidth);
    case ChipConfig::Kind::Custom:
      return {config.m1, config.m2};
  }
  return {0, 0};
}

}  // namespace surfc
