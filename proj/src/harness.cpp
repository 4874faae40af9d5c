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

#include "surfc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "surfc/error.hpp"
#include "surfc/generators.hpp"

namespace surfc {

std::string to_string(SchedulerKind k) {
  switch (k) {
    case SchedulerKind::Ecmas: return "ecmas";
    case SchedulerKind::ReSu: return "resu";
    case SchedulerKind::CircuitOrder: return "circuit-order";
    case SchedulerKind::TimeFirst: return "time-first";
    case SchedulerKind::ChannelFirst: return "channel-first";
  }
  return "?";
}

std::string to_string(MappingKind k) {
  switch (k) {
    case MappingKind::Ecmas: return "ecmas";
    case MappingKind::Snake: return "snake";
    case MappingKind::Random: return "random";
  }
  return "?";
}

std::string to_string(CutKind k) {
  switch (k) {
    case CutKind::Ecmas: return "ecmas";
    case CutKind::Random: return "random";
    case CutKind::MaxCut: return "maxcut";
  }
  return "?";
}

SchedulerKind parse_scheduler(const std::string& s) {
  for (auto k : {SchedulerKind::Ecmas, SchedulerKind::ReSu, SchedulerKind::CircuitOrder, SchedulerKind::TimeFirst,
                 SchedulerKind::ChannelFirst}) {
    if (to_string(k) == s) return k;
  }
  throw ValidationError("unknown scheduler '" + s + "'");
}

MappingKind parse_mapping(const std::string& s) {
  for (auto k : {MappingKind::Ecmas, MappingKind::Snake, MappingKind::Random})
    if (to_string(k) == s) return k;
  throw ValidationError("unknown mapping '" + s + "'");
}

CutKind parse_cuts(const std::string& s) {
  for (auto k : {CutKind::Ecmas, CutKind::Random, CutKind::MaxCut})
    if (to_string(k) == s) return k;
  throw ValidationError("unknown cut initialization '" + s + "'");
}

// ---------------------------------------------------------------------------
// Circuit sources

namespace {

bool is_file_spec(const std::string& s) {
  return s.find('/') != std::string::npos || (s.size() > 5 && s.substr(s.size() - 5) == ".qasm");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

int to_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("expected an integer for " + what + ", got '" + s + "'");
  }
}

}  // namespace

std::string CircuitSource::label(std::uint64_t seed) const {
  if (is_file_spec(spec)) return std::filesystem::path(spec).stem().string();
  const auto parts = split(spec, ':');
  if (parts.size() == 4 && parts[0] == "random") {
    return "random_n" + parts[1] + "_d" + parts[2] + "_p" + parts[3] + "_s" + std::to_string(seed);
  }
  if (parts.size() == 2) return parts[0] + "_n" + parts[1];
  return spec;
}

LogicalCircuit CircuitSource::load(std::uint64_t seed) const {
  if (spec.empty()) throw ValidationError("no circuit given");
  if (is_file_spec(spec)) return load_qasm_file(spec);
  const auto parts = split(spec, ':');
  if (parts.size() == 4 && parts[0] == "random") {
    return gen_random_circuit(to_int(parts[1], "n"), to_int(parts[2], "depth"), to_int(parts[3], "parallelism"),
                              seed);
  }
  if (parts.size() == 2) return benchmark_circuit(parts[0], to_int(parts[1], "n"));
  throw ValidationError("unrecognised circuit '" + spec + "' (file.qasm, <bench>:<n> or random:<n>:<depth>:<p>)");
}

// ---------------------------------------------------------------------------
// Configuration

void RunConfig::check() const {
  if (d < 1) throw ValidationError("code distance must be >= 1");
  if (trials < 1) throw ValidationError("mapping trials must be >= 1");
  if (model == Model::LatticeSurgery && cuts != CutKind::Ecmas) {
    throw ValidationError("cut-type options only apply to the double-defect model");
  }
  if (scheduler == SchedulerKind::ReSu && cuts != CutKind::Ecmas) {
    throw ValidationError("the sufficient-resource scheduler chooses its own cut types");
  }
  if (model == Model::LatticeSurgery &&
      (scheduler == SchedulerKind::TimeFirst || scheduler == SchedulerKind::ChannelFirst)) {
    throw ValidationError("time-first and channel-first only differ on same-cut double-defect gates");
  }
}

std::map<std::string, std::string> RunConfig::settings() const {
  return {{"circuit", circuit.spec},
          {"model", to_string(model)},
          {"chip", chip.to_string()},
          {"d", std::to_string(d)},
          {"scheduler", to_string(scheduler)},
          {"mapping", to_string(mapping)},
          {"cuts", to_string(cuts)},
          {"seed", std::to_string(seed)},
          {"trials", std::to_string(trials)}};
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "circuit") {
    c.circuit.spec = value;
  } else if (key == "model") {
    c.model = parse_model(value);
  } else if (key == "chip") {
    c.chip = ChipConfig::parse(value);
  } else if (key == "d") {
    c.d = to_int(value, "d");
  } else if (key == "scheduler") {
    c.scheduler = parse_scheduler(value);
  } else if (key == "mapping") {
    c.mapping = parse_mapping(value);
  } else if (key == "cuts") {
    c.cuts = parse_cuts(value);
  } else if (key == "seed") {
    c.seed = static_cast<std::uint64_t>(to_int(value, "seed"));
  } else if (key == "trials") {
    c.trials = to_int(value, "trials");
  } else {
    throw ValidationError("unknown setting '" + key + "'");
  }
}

std::map<std::string, std::string> parse_config_text(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected key = value");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key.empty()) throw ParseError(lineno, "empty key");
    out[key] = value;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Runs

nlohmann::ordered_json RunReport::to_json() const {
  nlohmann::ordered_json j;
  j["circuit"] = circuit;
  j["model"] = model;
  j["chip"] = chip;
  j["d"] = d;
  j["scheduler"] = scheduler;
  j["mapping"] = mapping;
  j["cuts"] = cuts;
  j["seed"] = seed;
  j["n"] = n;
  j["alpha"] = alpha;
  j["g"] = g;
  j["pm_estimate"] = pm;
  j["m1"] = m1;
  j["m2"] = m2;
  j["rows"] = rows;
  j["cols"] = cols;
  j["bandwidth"] = bandwidth;
  j["total_bandwidth"] = total_bandwidth;
  j["capacity"] = capacity;
  j["delta"] = delta;
  j["compile_seconds"] = compile_seconds;
  j["valid"] = valid;
  j["violations"] = violations;
  if (!error.empty()) j["error"] = error;
  return j;
}

RunReport RunReport::from_json(const nlohmann::json& j) {
  RunReport r;
  try {
    r.circuit = j.at("circuit").get<std::string>();
    r.model = j.at("model").get<std::string>();
    r.chip = j.at("chip").get<std::string>();
    r.d = j.at("d").get<int>();
    r.scheduler = j.at("scheduler").get<std::string>();
    r.mapping = j.at("mapping").get<std::string>();
    r.cuts = j.at("cuts").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.n = j.at("n").get<int>();
    r.alpha = j.at("alpha").get<int>();
    r.g = j.at("g").get<int>();
    r.pm = j.at("pm_estimate").get<int>();
    r.m1 = j.at("m1").get<int>();
    r.m2 = j.at("m2").get<int>();
    r.rows = j.at("rows").get<int>();
    r.cols = j.at("cols").get<int>();
    r.bandwidth = j.at("bandwidth").get<int>();
    r.total_bandwidth = j.at("total_bandwidth").get<int>();
    r.capacity = j.at("capacity").get<int>();
    r.delta = j.at("delta").get<int>();
    r.compile_seconds = j.at("compile_seconds").get<double>();
    r.valid = j.at("valid").get<bool>();
    r.violations = j.at("violations").get<std::vector<std::string>>();
    r.error = j.value("error", std::string());
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed run report: ") + e.what());
  }
  return r;
}

namespace {

template <typename F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const InfeasibleError& e) {
    throw InfeasibleError(std::string(name) + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(name) + ": " + e.what());
  }
}

}  // namespace

RunReport run_circuit(const LogicalCircuit& circuit, const std::string& label, const RunConfig& config,
                      RunArtifacts* artifacts) {
  config.check();
  RunReport rep;
  rep.circuit = label;
  rep.model = to_string(config.model);
  rep.chip = config.chip.to_string();
  rep.scheduler = to_string(config.scheduler);
  rep.mapping = to_string(config.mapping);
  rep.cuts = config.model == Model::DoubleDefect ? to_string(config.cuts) : "-";
  rep.d = config.d;
  rep.seed = config.seed;
  rep.n = circuit.num_qubits();
  rep.g = circuit.num_gates();

  const auto t0 = std::chrono::steady_clock::now();
  const GateDag dag(circuit);
  const CommGraph comm(circuit);
  rep.alpha = dag.depth();
  const LayerSchedule layers = rep.g > 0 ? para_finding(dag) : LayerSchedule{};
  rep.pm = layers.pmax();

  const int n = std::max(1, rep.n);
  const bool dd = config.model == Model::DoubleDefect;
  const bool limited = config.scheduler != SchedulerKind::ReSu;
  const bool adjust = limited && config.mapping == MappingKind::Ecmas;

  const ChipLayout initial = stage("chip", [&] {
    const auto [m1, m2] = config_dims(config.chip, n, config.d, config.model, std::max(1, rep.pm));
    const ChipSpec spec{config.model, m1, m2, config.d};
    const ArrayShape shape = determine_shape(rep.n, max_tile_grid(spec));
    return derive_layout(spec, shape, adjust ? Distribution::Reserve : Distribution::Uniform);
  });

  const TileMapping mapping = stage("map", [&] {
    switch (config.mapping) {
      case MappingKind::Ecmas: {
        MappingOptions o;
        o.trials = config.trials;
        o.seed = config.seed;
        if (!dd) o.penalty = [&](const TileMapping& m) { return unroutable_pairs(initial, m, comm); };
        return establish_mapping(comm, initial.shape(), o);
      }
      case MappingKind::Snake:
        return baseline_mapping(BaselineMapping::TrivialSnake, rep.n, initial.shape());
      case MappingKind::Random:
        return baseline_mapping(BaselineMapping::Random, rep.n, initial.shape(), config.seed);
    }
    throw ValidationError("unhandled mapping kind");
  });
  const ChipLayout layout = adjust ? adjust_bandwidth(initial, mapping, circuit) : initial;

  CutAssignment cuts;
  if (dd) {
    switch (config.cuts) {
      case CutKind::Ecmas: cuts = init_cut_types(circuit); break;
      case CutKind::Random: cuts = baseline_cuts(BaselineCuts::Random, comm, config.seed); break;
      case CutKind::MaxCut: cuts = baseline_cuts(BaselineCuts::MaxCut, comm, config.seed); break;
    }
  }

  EncodedSchedule schedule = stage("schedule", [&] {
    switch (config.scheduler) {
      case SchedulerKind::Ecmas: return schedule_limited(circuit, layout, mapping, cuts);
      case SchedulerKind::ReSu: return schedule_sufficient(circuit, layers, layout, mapping);
      case SchedulerKind::CircuitOrder:
        return baseline_schedule(BaselineScheduler::CircuitOrder, circuit, layout, mapping, cuts);
      case SchedulerKind::TimeFirst:
        return baseline_schedule(BaselineScheduler::TimeFirst, circuit, layout, mapping, cuts);
      case SchedulerKind::ChannelFirst:
        return baseline_schedule(BaselineScheduler::ChannelFirst, circuit, layout, mapping, cuts);
    }
    throw ValidationError("unhandled scheduler kind");
  });
  rep.compile_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  rep.m1 = layout.spec().m1;
  rep.m2 = layout.spec().m2;
  rep.rows = layout.rows();
  rep.cols = layout.cols();
  rep.bandwidth = layout.bandwidth();
  rep.total_bandwidth = layout.total_bandwidth();
  rep.capacity = layout.capacity();
  rep.delta = schedule.delta();
  rep.violations = validate(schedule, circuit, layout, mapping);
  if (rep.delta < rep.alpha) {
    rep.violations.push_back("delta " + std::to_string(rep.delta) + " below the critical path " +
                             std::to_string(rep.alpha));
  }
  rep.valid = rep.violations.empty();
  if (artifacts) {
    artifacts->circuit = circuit;
    artifacts->layers = layers;
    artifacts->layout = layout;
    artifacts->mapping = mapping;
    artifacts->cuts = dd ? schedule.initial_cuts : CutAssignment{};
    artifacts->schedule = std::move(schedule);
  }
  return rep;
}

RunReport run(const RunConfig& config, RunArtifacts* artifacts) {
  config.check();
  const LogicalCircuit circuit = stage("parse", [&] { return config.circuit.load(config.seed); });
  return run_circuit(circuit, config.circuit.label(config.seed), config, artifacts);
}

std::vector<RunReport> sweep(const std::vector<RunConfig>& configs, const SweepOptions& options) {
  std::vector<RunReport> out(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      const auto& cfg = configs[i];
      try {
        std::vector<double> times;
        RunReport rep;
        for (int r = 0; r < std::max(1, options.timing_repeats); ++r) {
          rep = run(cfg);
          times.push_back(rep.compile_seconds);
        }
        std::sort(times.begin(), times.end());
        rep.compile_seconds = times[times.size() / 2];
        out[i] = std::move(rep);
      } catch (const std::exception& e) {
        RunReport rep;
        rep.circuit = cfg.circuit.label(cfg.seed);
        rep.model = to_string(cfg.model);
        rep.chip = cfg.chip.to_string();
        rep.scheduler = to_string(cfg.scheduler);
        rep.mapping = to_string(cfg.mapping);
        rep.cuts = to_string(cfg.cuts);
        rep.d = cfg.d;
        rep.seed = cfg.seed;
        rep.error = e.what();
        out[i] = std::move(rep);
      }
    }
  };
  const int workers = std::max(1, options.workers);
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

void write_csv(std::ostream& out, const std::vector<RunReport>& reports) {
  auto group = [](const RunReport& r) {
    return r.circuit + '|' + r.model + '|' + std::to_string(r.d) + '|' + r.scheduler + '|' + r.mapping + '|' + r.cuts;
  };
  std::map<std::string, double> base;
  for (const auto& r : reports)
    if (r.error.empty() && r.chip == "min") base[group(r)] = r.compile_seconds;
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + '"';
  };
  out << "circuit,model,chip,d,scheduler,mapping,cuts,seed,n,alpha,g,pm_estimate,m1,m2,rows,cols,bandwidth,"
         "total_bandwidth,capacity,delta,compile_seconds,time_ratio,valid,error\n";
  for (const auto& r : reports) {
    std::string ratio;
    if (const auto it = base.find(group(r)); it != base.end() && r.error.empty() && it->second > 0) {
      std::ostringstream s;
      s << r.compile_seconds / it->second;
      ratio = s.str();
    }
    out << quote(r.circuit) << ',' << r.model << ',' << r.chip << ',' << r.d << ',' << r.scheduler << ','
        << r.mapping << ',' << r.cuts << ',' << r.seed << ',' << r.n << ',' << r.alpha << ',' << r.g << ',' << r.pm
        << ',' << r.m1 << ',' << r.m2 << ',' << r.rows << ',' << r.cols << ',' << r.bandwidth << ','
        << r.total_bandwidth << ',' << r.capacity << ',' << r.delta << ',' << r.compile_seconds << ',' << ratio
        << ',' << (r.valid ? "true" : "false") << ',' << quote(r.error) << '\n';
  }
}

double reduction_percent(int delta_a, int delta_b) {
  if (delta_a < 0 || delta_b < 0) throw ValidationError("cycle counts must be non-negative");
  if (delta_a == 0) {
    if (delta_b == 0) return 0.0;
    throw ValidationError("reduction relative to an empty schedule is undefined");
  }
  return 100.0 * (delta_a - delta_b) / delta_a;
}

double compare(const RunReport& a, const RunReport& b) {
  if (a.circuit != b.circuit || a.n != b.n || a.g != b.g) {
    throw ValidationError("compare: reports cover different circuits");
  }
  if (a.model != b.model || a.m1 != b.m1 || a.m2 != b.m2 || a.d != b.d) {
    throw ValidationError("compare: reports cover different chips");
  }
  return reduction_percent(a.delta, b.delta);
}

}  // namespace surfc
