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

// surfc command-line driver.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "surfc/error.hpp"
#include "surfc/harness.hpp"
#include "surfc/oracle.hpp"

namespace {

using namespace surfc;
using nlohmann::ordered_json;

enum Exit { kOk = 0, kUsage = 1, kInvalid = 2, kInfeasible = 3 };

struct RunFlags {
  std::string circuit;
  std::string config;
  std::string model, chip, scheduler, mapping, cuts;
  int d = 0;
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<CLI::Option*> given;  // options that map onto settings, in key order
  std::vector<std::string> keys;
};

void add_run_flags(CLI::App* app, RunFlags& f, bool circuit_positional = true) {
  if (circuit_positional) app->add_option("circuit", f.circuit, "QASM file or generator spec (ghz:23, random:16:20:4)");
  app->add_option("--config", f.config, "key = value settings file; flags override it");
  auto add = [&](const std::string& key, CLI::Option* o) {
    f.given.push_back(o);
    f.keys.push_back(key);
  };
  add("model", app->add_option("--model", f.model, "dd | ls")->check(CLI::IsMember({"dd", "ls"})));
  add("chip", app->add_option("--chip", f.chip, "min | 4x | sufficient | bw<k> | WxH"));
  add("d", app->add_option("-d,--distance", f.d, "code distance")->check(CLI::PositiveNumber));
  add("scheduler", app->add_option("--scheduler", f.scheduler,
                                   "ecmas | resu | circuit-order | time-first | channel-first"));
  add("mapping", app->add_option("--mapping", f.mapping, "ecmas | snake | random"));
  add("cuts", app->add_option("--cuts", f.cuts, "ecmas | random | maxcut"));
  add("seed", app->add_option("--seed", f.seed, "random seed"));
  add("trials", app->add_option("--trials", f.trials, "mapping trials")->check(CLI::PositiveNumber));
}

RunConfig build_config(const RunFlags& f) {
  RunConfig c;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw ValidationError("cannot open config file " + f.config);
    for (const auto& [k, v] : parse_config_text(in)) apply_setting(c, k, v);
  }
  for (std::size_t i = 0; i < f.given.size(); ++i) {
    if (f.given[i]->count() == 0) continue;
    apply_setting(c, f.keys[i], f.given[i]->as<std::string>());
  }
  if (!f.circuit.empty()) c.circuit.spec = f.circuit;
  c.check();
  return c;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ValidationError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

int cmd_profile(const RunFlags& f, const std::string& out_path) {
  const RunConfig c = build_config(f);
  const LogicalCircuit circuit = c.circuit.load(c.seed);
  const GateDag dag(circuit);
  ordered_json j;
  j["circuit"] = c.circuit.label(c.seed);
  j["n"] = circuit.num_qubits();
  j["g"] = circuit.num_gates();
  j["alpha"] = dag.depth();
  if (circuit.num_gates() > 0) {
    const LayerSchedule layers = para_finding(dag);
    j["pm_estimate"] = layers.pmax();
    j["layers"] = layers.layers;
  } else {
    j["pm_estimate"] = 0;
    j["layers"] = ordered_json::array();
  }
  Output out(out_path);
  out.stream() << j.dump(2) << '\n';
  return kOk;
}

int cmd_chip(const RunFlags& f, int qubits, int pm, const std::string& out_path) {
  RunConfig c = build_config(f);
  if (qubits <= 0) {
    if (c.circuit.spec.empty()) throw ValidationError("chip needs a circuit or --qubits");
    const LogicalCircuit circuit = c.circuit.load(c.seed);
    qubits = circuit.num_qubits();
    if (pm <= 0 && circuit.num_gates() > 0) pm = para_finding(GateDag(circuit)).pmax();
  }
  const auto [m1, m2] = config_dims(c.chip, std::max(1, qubits), c.d, c.model, std::max(1, pm));
  const ChipSpec spec{c.model, m1, m2, c.d};
  const ArrayShape grid = max_tile_grid(spec);
  const ArrayShape shape = determine_shape(qubits, grid);
  const ChipLayout layout = derive_layout(spec, shape);
  ordered_json j;
  j["qubits"] = qubits;
  j["max_grid"] = {grid.rows, grid.cols};
  j["layout"] = layout.to_json();
  j["bandwidth"] = layout.bandwidth();
  j["total_bandwidth"] = layout.total_bandwidth();
  j["capacity"] = layout.capacity();
  Output out(out_path);
  out.stream() << j.dump(2) << '\n';
  return kOk;
}

int cmd_map(const RunFlags& f, const std::string& out_path) {
  const RunConfig c = build_config(f);
  RunArtifacts art;
  const RunReport rep = run(c, &art);
  ordered_json j;
  j["circuit"] = rep.circuit;
  j["layout"] = art.layout.to_json();
  j["mapping"] = art.mapping.to_json(art.layout.model() == Model::DoubleDefect ? &art.cuts : nullptr);
  j["cost"] = mapping_cost(art.mapping, CommGraph(art.circuit));
  Output out(out_path);
  out.stream() << j.dump(2) << '\n';
  return kOk;
}

int cmd_schedule(const RunFlags& f, const std::string& out_path, const std::string& format, bool draw) {
  const RunConfig c = build_config(f);
  RunArtifacts art;
  const RunReport rep = run(c, &art);
  const RoutingGraph graph(art.layout, art.mapping.tiles());
  Output out(out_path);
  if (format == "csv") {
    write_csv(out.stream(), {rep});
  } else {
    ordered_json j;
    j["report"] = rep.to_json();
    j["layout"] = art.layout.to_json();
    j["mapping"] = art.mapping.to_json(art.layout.model() == Model::DoubleDefect ? &art.cuts : nullptr);
    j["schedule"] = art.schedule.to_json(graph);
    out.stream() << j.dump(2) << '\n';
  }
  if (draw) {
    for (int t = 0; t < art.schedule.delta(); ++t) {
      std::vector<RoutePath> routes;
      for (const auto& a : art.schedule.cycles[static_cast<std::size_t>(t)].actions)
        if (a.kind != ActionKind::CutModify) routes.push_back(a.route);
      std::cerr << "cycle " << t << '\n' << graph.render(routes) << '\n';
    }
  }
  for (const auto& v : rep.violations) std::cerr << "violation: " << v << '\n';
  return rep.valid ? kOk : kInvalid;
}

int cmd_oracle(const RunFlags& f, const std::string& what, const OracleBudget& budget, const std::string& out_path) {
  const RunConfig c = build_config(f);
  const LogicalCircuit circuit = c.circuit.load(c.seed);
  ordered_json j;
  j["circuit"] = c.circuit.label(c.seed);
  if (what == "pm" || what == "all") j["optimal_pm"] = optimal_pm(GateDag(circuit), budget);
  if (what == "cycles" || what == "all") {
    RunArtifacts art;
    const RunReport rep = run_circuit(circuit, c.circuit.label(c.seed), c, &art);
    const bool dd = art.layout.model() == Model::DoubleDefect;
    j["heuristic_delta"] = rep.delta;
    j["optimal_delta"] = optimal_cycles(circuit, art.layout, art.mapping, dd ? art.cuts : CutAssignment{}, budget);
    if (dd) j["optimal_delta_free_cuts"] = optimal_cycles(circuit, art.layout, art.mapping, {}, budget);
  }
  Output out(out_path);
  out.stream() << j.dump(2) << '\n';
  return kOk;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

struct SweepFlags {
  std::vector<std::string> circuits;
  std::string models = "dd", chips = "min", schedulers = "ecmas", mappings = "ecmas", cuts = "ecmas";
  std::string d = "3";
  std::uint64_t seed_from = 1, seed_to = 1;
  int trials = 16;
  int workers = 1;
  int repeats = 3;
};

int cmd_sweep(const SweepFlags& s, const std::string& config_path, const std::string& out_path,
              const std::string& format) {
  RunConfig base;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ValidationError("cannot open config file " + config_path);
    for (const auto& [k, v] : parse_config_text(in)) apply_setting(base, k, v);
  }
  std::vector<std::string> circuits = s.circuits;
  if (circuits.empty() && !base.circuit.spec.empty()) circuits.push_back(base.circuit.spec);
  if (circuits.empty()) throw ValidationError("sweep needs at least one --circuit");
  if (s.seed_to < s.seed_from) throw ValidationError("--seeds range is empty");

  std::vector<RunConfig> configs;
  for (const auto& circuit : circuits)
    for (const auto& model : split_list(s.models))
      for (const auto& d : split_list(s.d))
        for (const auto& chip : split_list(s.chips))
          for (const auto& sched : split_list(s.schedulers))
            for (const auto& mapping : split_list(s.mappings))
              for (const auto& cuts : split_list(s.cuts))
                for (std::uint64_t seed = s.seed_from; seed <= s.seed_to; ++seed) {
                  RunConfig c = base;
                  c.circuit.spec = circuit;
                  apply_setting(c, "model", model);
                  apply_setting(c, "d", d);
                  apply_setting(c, "chip", chip);
                  apply_setting(c, "scheduler", sched);
                  apply_setting(c, "mapping", mapping);
                  apply_setting(c, "cuts", model == "ls" ? "ecmas" : cuts);
                  c.seed = seed;
                  c.trials = s.trials;
                  configs.push_back(std::move(c));
                }
  SweepOptions opt;
  opt.workers = s.workers;
  opt.timing_repeats = s.repeats;
  const auto reports = sweep(configs, opt);
  Output out(out_path);
  if (format == "json") {
    auto arr = ordered_json::array();
    for (const auto& r : reports) arr.push_back(r.to_json());
    out.stream() << arr.dump(2) << '\n';
  } else {
    write_csv(out.stream(), reports);
  }
  int failed = 0;
  for (const auto& r : reports) failed += r.error.empty() && !r.valid;
  return failed > 0 ? kInvalid : kOk;
}

RunReport read_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open report " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
  return RunReport::from_json(j.contains("report") ? j["report"] : j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"surfc: surface-code CNOT compiler"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path, format = "json";
  app.add_option("--out", out_path, "write output to this file instead of stdout");
  app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

  RunFlags profile_flags, chip_flags, map_flags, sched_flags, oracle_flags;
  auto* profile = app.add_subcommand("profile", "depth, gate count and parallelism estimate");
  add_run_flags(profile, profile_flags);

  auto* chip = app.add_subcommand("chip", "chip dimensions and corridor layout");
  add_run_flags(chip, chip_flags);
  int qubits = 0, pm = 0;
  chip->add_option("--qubits", qubits, "logical qubit count (instead of a circuit)");
  chip->add_option("--pm", pm, "parallelism for the sufficient chip");
  chip->require_subcommand(0, 1);
  chip->add_subcommand("describe", "same as chip: R, C, corridor widths, b and capacity")->fallthrough();

  auto* map = app.add_subcommand("map", "tile placement, corridor widths and cut types");
  add_run_flags(map, map_flags);

  auto* schedule = app.add_subcommand("schedule", "compile and validate a schedule");
  add_run_flags(schedule, sched_flags);
  bool draw = false;
  schedule->add_flag("--draw", draw, "print every cycle's routes to stderr");

  auto* oracle = app.add_subcommand("oracle", "exact answers for tiny instances");
  add_run_flags(oracle, oracle_flags);
  std::string what = "all";
  OracleBudget budget;
  oracle->add_option("--what", what, "pm | cycles | all")->check(CLI::IsMember({"pm", "cycles", "all"}));
  oracle->add_option("--max-gates", budget.max_gates);
  oracle->add_option("--max-qubits", budget.max_qubits);
  oracle->add_option("--time-limit", budget.time_limit_seconds, "seconds");

  auto* sweep_cmd = app.add_subcommand("sweep", "run a grid of configurations into one table");
  SweepFlags sf;
  std::string sweep_config, seeds;
  sweep_cmd->add_option("--circuit", sf.circuits, "circuit spec (repeatable)");
  sweep_cmd->add_option("--config", sweep_config, "base settings file");
  sweep_cmd->add_option("--model", sf.models, "comma-separated models");
  sweep_cmd->add_option("--chip", sf.chips, "comma-separated chip configurations");
  sweep_cmd->add_option("-d,--distance", sf.d, "comma-separated code distances");
  sweep_cmd->add_option("--scheduler", sf.schedulers, "comma-separated schedulers");
  sweep_cmd->add_option("--mapping", sf.mappings, "comma-separated mappings");
  sweep_cmd->add_option("--cuts", sf.cuts, "comma-separated cut initializations");
  sweep_cmd->add_option("--seeds", seeds, "seed or range, e.g. 1-50");
  sweep_cmd->add_option("--trials", sf.trials, "mapping trials")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--workers", sf.workers, "concurrent rows")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--repeats", sf.repeats, "timing repeats per row")->check(CLI::PositiveNumber);

  auto* compare_cmd = app.add_subcommand("compare", "cycle reduction of report B over report A");
  std::string report_a, report_b;
  compare_cmd->add_option("report_a", report_a)->required();
  compare_cmd->add_option("report_b", report_b)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (format == "csv" && !*schedule && !*sweep_cmd) {
      throw ValidationError("csv output is only available for schedule and sweep");
    }
    if (*profile) return cmd_profile(profile_flags, out_path);
    if (*chip) return cmd_chip(chip_flags, qubits, pm, out_path);
    if (*map) return cmd_map(map_flags, out_path);
    if (*schedule) return cmd_schedule(sched_flags, out_path, format, draw);
    if (*oracle) return cmd_oracle(oracle_flags, what, budget, out_path);
    if (*sweep_cmd) {
      if (!seeds.empty()) {
        const auto dash = seeds.find('-');
        sf.seed_from = std::stoull(seeds.substr(0, dash));
        sf.seed_to = dash == std::string::npos ? sf.seed_from : std::stoull(seeds.substr(dash + 1));
      }
      return cmd_sweep(sf, sweep_config, out_path, format == "json" && !app.get_option("--format")->count()
                                                                ? "csv"
                                                                : format);
    }
    if (*compare_cmd) {
      const RunReport a = read_report(report_a), b = read_report(report_b);
      const double pct = compare(a, b);
      Output out(out_path);
      std::ostringstream s;
      s.setf(std::ios::fixed);
      s.precision(1);
      s << pct;
      out.stream() << "{\"delta_a\": " << a.delta << ", \"delta_b\": " << b.delta << ", \"reduction_percent\": "
                   << s.str() << "}\n";
      return kOk;
    }
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const BudgetExceeded& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad number: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
