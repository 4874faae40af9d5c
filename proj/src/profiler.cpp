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

#include "surfc/profiler.hpp"

#include <algorithm>
#include <set>

#include "surfc/error.hpp"

namespace surfc {

int LayerSchedule::pmax() const {
  std::size_t m = 0;
  for (const auto& l : layers) m = std::max(m, l.size());
  return static_cast<int>(m);
}

std::pair<GateId, int> slack_tiebreak(std::span<const GateWindow> candidates, std::span<const int> loads) {
  if (candidates.empty()) throw ValidationError("slack_tiebreak: empty candidate set");
  const GateWindow* best = &candidates.front();
  for (const auto& c : candidates) {
    const int s = c.high - c.low, bs = best->high - best->low;
    if (s < bs || (s == bs && c.gate < best->gate)) best = &c;
  }
  int layer = best->low;
  for (int l = best->low; l <= best->high; ++l) {
    if (loads[static_cast<std::size_t>(l - 1)] < loads[static_cast<std::size_t>(layer - 1)]) layer = l;
  }
  return {best->gate, layer};
}

LayerSchedule para_finding(const GateDag& dag) {
  const int g = dag.size();
  const int alpha = dag.depth();
  LayerSchedule out;
  out.low = dag.asap();
  out.high = dag.alap();
  out.layer_of.assign(static_cast<std::size_t>(g), 0);
  std::vector<int> loads(static_cast<std::size_t>(alpha), 0);
  auto& low = out.low;
  auto& high = out.high;

  // Unplaced gates ordered by (slack, id).
  std::set<std::pair<int, GateId>> open;
  for (GateId v = 0; v < g; ++v) open.insert({high[v] - low[v], v});

  std::vector<GateId> stack;
  while (!open.empty()) {
    const auto [slack, v] = *open.begin();
    int layer = low[v];
    for (int l = low[v]; l <= high[v]; ++l) {
      if (loads[l - 1] < loads[layer - 1]) layer = l;
    }
    open.erase(open.begin());
    out.layer_of[v] = layer;
    ++loads[layer - 1];
    low[v] = high[v] = layer;

    auto retighten = [&](GateId u, int new_low, int new_high) {
      if (out.layer_of[u] == 0) open.erase({high[u] - low[u], u});
      low[u] = new_low;
      high[u] = new_high;
      if (out.layer_of[u] == 0) open.insert({high[u] - low[u], u});
    };
    // Low rises along descendants, High falls along ancestors; only gates
    // whose bound actually changes are revisited.
    stack.assign(1, v);
    while (!stack.empty()) {
      const GateId u = stack.back();
      stack.pop_back();
      for (GateId c : dag.children(u)) {
        if (low[c] < low[u] + 1) {
          retighten(c, low[u] + 1, high[c]);
          stack.push_back(c);
        }
      }
    }
    stack.assign(1, v);
    while (!stack.empty()) {
      const GateId u = stack.back();
      stack.pop_back();
      for (GateId p : dag.parents(u)) {
        if (high[p] > high[u] - 1) {
          retighten(p, low[p], high[u] - 1);
          stack.push_back(p);
        }
      }
    }
  }

  out.layers.assign(static_cast<std::size_t>(alpha), {});
  for (GateId v = 0; v < g; ++v) out.layers[out.layer_of[v] - 1].push_back(v);
  return out;
}

bool is_valid_layering(const GateDag& dag, const std::vector<std::vector<GateId>>& layers) {
  std::vector<int> at(static_cast<std::size_t>(dag.size()), 0);
  for (std::size_t i = 0; i < layers.size(); ++i) {
    for (GateId v : layers[i]) {
      if (v < 0 || v >= dag.size() || at[v] != 0) return false;
      at[v] = static_cast<int>(i) + 1;
    }
  }
  for (GateId v = 0; v < dag.size(); ++v) {
    if (at[v] == 0) return false;
    for (GateId c : dag.children(v))
      if (at[c] <= at[v]) return false;
  }
  return true;
}

}  // namespace surfc
