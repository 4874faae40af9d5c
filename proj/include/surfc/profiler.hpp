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

#include <span>
#include <utility>
#include <vector>

#include "surfc/circuit.hpp"

namespace surfc {

/// Minimum-length layering of a gate DAG.
struct LayerSchedule {
  /// layers[i] holds the gates of layer i + 1, ascending by id.
  std::vector<std::vector<GateId>> layers;
  /// 1-based layer of every gate.
  std::vector<int> layer_of;
  /// Final Low/High bounds (equal once every gate is placed).
  std::vector<int> low;
  std::vector<int> high;

  int length() const { return static_cast<int>(layers.size()); }
  /// Widest layer: the parallelism estimate.
  int pmax() const;
};

/// Greedy minimum-slack layering: repeatedly fix the gate with the smallest
/// High - Low window into its least-loaded feasible layer, then tighten the
/// windows of its descendants and ancestors.
LayerSchedule para_finding(const GateDag& dag);

struct GateWindow {
  GateId gate = 0;
  int low = 1;
  int high = 1;
};

/// Picks the minimum-slack gate (ties: lowest id) and its least-loaded layer
/// within [low, high] (ties: earliest). `loads[i]` is the load of layer i + 1.
/// Throws ValidationError on an empty candidate set.
std::pair<GateId, int> slack_tiebreak(std::span<const GateWindow> candidates, std::span<const int> loads);

/// True when `layers` is a precedence-respecting partition of all gates.
bool is_valid_layering(const GateDag& dag, const std::vector<std::vector<GateId>>& layers);

}  // namespace surfc
