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
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "surfc/chip.hpp"
#include "surfc/circuit.hpp"
#include "surfc/placement.hpp"
#include "surfc/profiler.hpp"
#include "surfc/scheduler.hpp"

namespace surfc {

enum class SchedulerKind { Ecmas, ReSu, CircuitOrder, TimeFirst, ChannelFirst };
enum class MappingKind { Ecmas, Snake, Random };
enum class CutKind { Ecmas, Random, MaxCut };

std::string to_string(SchedulerKind k);
std::string to_string(MappingKind k);
std::string to_string(CutKind k);
SchedulerKind parse_scheduler(const std::string& s);
MappingKind parse_mapping(const std::string& s);
CutKind parse_cuts(const std::string& s);

/// Where the circuit comes from: a .qasm path or a generator spec such as
/// "ghz:23", "bv:10", "qpe:9" or "random:<n>:<depth>:<parallelism>".
struct CircuitSource {
  std::string spec;

  /// Stable label used in reports, e.g. "random_n16_d20_p4_s3".
  std::string label(std::uint64_t seed) const;
  LogicalCircuit load(std::uint64_t seed) const;
};

struct RunConfig {
  CircuitSource circuit;
  Model model = Model::DoubleDefect;
  ChipConfig chip;
  int d = 3;
  SchedulerKind scheduler = SchedulerKind::Ecmas;
  MappingKind mapping = MappingKind::Ecmas;
  CutKind cuts = CutKind::Ecmas;
  std::uint64_t seed = 1;
  int trials = 16;

  /// Throws ValidationError on inconsistent settings.
  void check() const;
  /// key = value pairs as accepted by apply_setting.
  std::map<std::string, std::string> settings() const;
};

/// Applies one key = value setting; unknown keys throw ValidationError.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Reads a key = value file ('#' starts a comment). Throws ParseError with the
/// offending line.
std::map<std::string, std::string> parse_config_text(std::istream& in);

struct RunReport {
  std::string circuit;
  std::string model;
  std::string chip;
  std::string scheduler;
  std::string mapping;
  std::string cuts;
  int d = 0;
  std::uint64_t seed = 0;
  int n = 0, alpha = 0, g = 0, pm = 0;
  int m1 = 0, m2 = 0, rows = 0, cols = 0;
  int bandwidth = 0, total_bandwidth = 0, capacity = 0;
  int delta = 0;
  double compile_seconds = 0;
  bool valid = false;
  std::vector<std::string> violations;
  std::string error;  ///< set when the run failed before producing a schedule

  nlohmann::ordered_json to_json() const;
  /// Inverse of to_json; missing fields throw ValidationError.
  static RunReport from_json(const nlohmann::json& j);
};

/// Everything a run produced, for callers that need more than the report.
struct RunArtifacts {
  LogicalCircuit circuit;
  LayerSchedule layers;
  ChipLayout layout;
  TileMapping mapping;
  CutAssignment cuts;
  EncodedSchedule schedule;
};

/// parse, profile, lay out, map, schedule and validate. Stage errors are
/// rethrown with the stage name prefixed; a validation failure is reported
/// in the returned report, not thrown.
RunReport run(const RunConfig& config, RunArtifacts* artifacts = nullptr);

/// Compiles a circuit that is already in memory.
RunReport run_circuit(const LogicalCircuit& circuit, const std::string& label, const RunConfig& config,
                      RunArtifacts* artifacts = nullptr);

struct SweepOptions {
  int workers = 1;
  int timing_repeats = 3;  ///< compile time is the median of this many runs
};

/// Runs every configuration; failures are recorded per row. Rows come back in
/// input order.
std::vector<RunReport> sweep(const std::vector<RunConfig>& configs, const SweepOptions& options = {});

/// CSV with one row per report plus the compile-time ratio against the
/// minimum-viable chip row of the same circuit, model and strategy.
void write_csv(std::ostream& out, const std::vector<RunReport>& reports);

/// (delta_a - delta_b) / delta_a as a percentage.
double reduction_percent(int delta_a, int delta_b);
/// As above; throws ValidationError when the reports cover different circuits
/// or chips.
double compare(const RunReport& a, const RunReport& b);

}  // namespace surfc
