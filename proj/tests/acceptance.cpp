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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <queue>
#include <string>
#include <vector>

#include "surfc/harness.hpp"
#include "surfc/oracle.hpp"
#include "surfc/rng.hpp"

using namespace surfc;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

RunConfig config(const std::string& circuit, Model model, const std::string& chip) {
  RunConfig c;
  c.circuit.spec = circuit;
  c.model = model;
  c.chip = ChipConfig::parse(chip);
  return c;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome golden() {
  struct Case {
    std::string circuit;
    Model model;
    std::string chip;
    SchedulerKind scheduler;
    int expect;  // -1: alpha
  };
  const std::vector<Case> cases{
      {"ghz:23", Model::LatticeSurgery, "min", SchedulerKind::Ecmas, 22},
      {"bv:10", Model::LatticeSurgery, "min", SchedulerKind::Ecmas, 5},
      {"bv:10", Model::DoubleDefect, "min", SchedulerKind::Ecmas, 5},
      {"qpe:9", Model::LatticeSurgery, "sufficient", SchedulerKind::Ecmas, -1},
      {"qpe:9", Model::LatticeSurgery, "sufficient", SchedulerKind::ReSu, -1},
      {"qpe:9", Model::DoubleDefect, "sufficient", SchedulerKind::Ecmas, -1},
      {"ghz:23", Model::LatticeSurgery, "sufficient", SchedulerKind::ReSu, -1},
  };
  Outcome o{true, ""};
  for (const auto& c : cases) {
    auto cfg = config(c.circuit, c.model, c.chip);
    cfg.scheduler = c.scheduler;
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = run(cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const int want = c.expect < 0 ? r.alpha : c.expect;
    const bool ok = r.valid && r.delta == want && secs < 1.0 && (c.chip != "sufficient" || r.capacity >= r.pm);
    o.pass = o.pass && ok;
    o.detail += (o.detail.empty() ? "" : ", ") + r.circuit + "/" + r.model + "/" + r.scheduler + " " +
                std::to_string(r.delta) + (ok ? "" : "!=" + std::to_string(want));
  }
  return o;
}

Outcome motivation() {
  LogicalCircuit c(10);
  for (int i = 0; i < 5; ++i) c.add_cnot(i, 5 + (4 - i));
  std::vector<TileCoord> tiles;
  for (int i = 0; i < 5; ++i) tiles.push_back({0, i});
  for (int i = 0; i < 5; ++i) tiles.push_back({1, i});
  const TileMapping mapping({2, 5}, tiles);
  const int d = 2;
  const auto [m1, m2] = config_dims(ChipConfig::parse("4x"), 10, d, Model::DoubleDefect);
  const auto initial = derive_layout({Model::DoubleDefect, m1, m2, d}, {2, 5}, Distribution::Reserve);
  const auto layout = adjust_bandwidth(initial, mapping, c);
  const auto s = schedule_limited(c, layout, mapping, init_cut_types(c));
  const bool valid = validate(s, c, layout, mapping).empty();
  const int before = schedule_limited(c, initial, mapping, init_cut_types(c)).delta();
  return {valid && s.delta() == 1, "delta " + std::to_string(s.delta()) + " on " + std::to_string(m1) + "x" +
                                       std::to_string(m2) + " (before adjusting: " + std::to_string(before) + ")"};
}

Outcome batch_routing() {
  long trials = 0, ok = 0;
  for (Model model : {Model::DoubleDefect, Model::LatticeSurgery}) {
    for (int b : {1, 3, 5}) {
      const int k = chip_capacity(b);
      Rng rng(static_cast<std::uint64_t>(1000 * b + static_cast<int>(model)));
      for (int t = 0; t < 1000; ++t) {
        int rows = 0, cols = 0;
        do {
          rows = 3 + static_cast<int>(rng.index(6));
          cols = 3 + static_cast<int>(rng.index(6));
        } while (rows * cols < 2 * k);
        const auto layout = ChipLayout::uniform(model, 3, {rows, cols}, b);
        std::vector<TileCoord> all;
        for (int r = 0; r < rows; ++r)
          for (int c = 0; c < cols; ++c) all.push_back({r, c});
        rng.shuffle(all);
        const RoutingGraph graph(layout, all);
        std::vector<std::pair<TileCoord, TileCoord>> pairs;
        for (int i = 0; i < k; ++i) pairs.emplace_back(all[2 * i], all[2 * i + 1]);
        ++trials;
        try {
          const auto routes = route_batch_guaranteed(graph, pairs);
          std::vector<int> load(static_cast<std::size_t>(graph.num_resources()), 0);
          bool good = routes.size() == pairs.size();
          for (std::size_t i = 0; good && i < routes.size(); ++i) {
            good = graph.connects(routes[i], pairs[i].first, pairs[i].second);
            for (int r : routes[i].resources()) good = good && ++load[r] <= graph.capacity(r);
          }
          ok += good;
        } catch (const std::exception&) {
        }
      }
    }
  }
  return {ok == trials, std::to_string(ok) + "/" + std::to_string(trials) + " batches routed"};
}

bool two_colourable(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> colour(static_cast<std::size_t>(n), -1);
  for (int s = 0; s < n; ++s) {
    if (colour[s] >= 0) continue;
    colour[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : adj[u]) {
        if (colour[v] < 0) {
          colour[v] = 1 - colour[u];
          q.push(v);
        } else if (colour[v] == colour[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

Outcome layer_pairs() {
  int circuits = 0, pairs = 0, bad = 0;
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    Rng rng(seed);
    const int n = static_cast<int>(rng.uniform(2, 20));
    const int g = static_cast<int>(rng.uniform(1, 60));
    LogicalCircuit c(n);
    for (int i = 0; i < g; ++i) {
      const int a = static_cast<int>(rng.index(static_cast<std::size_t>(n)));
      int b = a;
      while (b == a) b = static_cast<int>(rng.index(static_cast<std::size_t>(n)));
      c.add_cnot(a, b);
    }
    ++circuits;
    const auto layers = para_finding(GateDag(c)).layers;
    for (std::size_t i = 0; i + 1 < layers.size(); ++i) {
      std::vector<std::pair<int, int>> edges;
      for (std::size_t k : {i, i + 1})
        for (GateId id : layers[k]) edges.emplace_back(c.gate(id).control, c.gate(id).target);
      ++pairs;
      bad += !two_colourable(n, edges);
    }
  }
  return {bad == 0, std::to_string(pairs - bad) + "/" + std::to_string(pairs) + " consecutive layer pairs bipartite over " +
                        std::to_string(circuits) + " circuits"};
}

Outcome sufficient_ratio() {
  int total = 0, ok = 0;
  double worst = 0;
  for (Model model : {Model::DoubleDefect, Model::LatticeSurgery}) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      Rng rng(seed);
      const int n = static_cast<int>(rng.uniform(2, 5));
      const int g = static_cast<int>(rng.uniform(1, 6));
      LogicalCircuit c(n);
      for (int i = 0; i < g; ++i) {
        const int a = static_cast<int>(rng.index(static_cast<std::size_t>(n)));
        int b = a;
        while (b == a) b = static_cast<int>(rng.index(static_cast<std::size_t>(n)));
        c.add_cnot(a, b);
      }
      const auto layout = ChipLayout::uniform(model, 3, {2, 3}, 1);
      const auto mapping = establish_mapping(CommGraph(c), {2, 3});
      const auto resu = schedule_sufficient(c, para_finding(GateDag(c)), layout, mapping);
      const int opt = optimal_cycles(c, layout, mapping);
      ++total;
      const bool good = validate(resu, c, layout, mapping).empty() && resu.delta() <= std::ceil(2.5 * opt);
      ok += good;
      worst = std::max(worst, static_cast<double>(resu.delta()) / opt);
    }
  }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " within bound, worst ratio " + fmt("%.2f", worst)};
}

Outcome validity() {
  std::vector<std::string> corpus{"ghz:23", "bv:10", "qft:6", "ising:10", "wstate:8", "swap_test:7", "qpe:9"};
  for (int s = 0; s < 4; ++s) corpus.push_back("random:12:12:" + std::to_string(2 + s));
  corpus.push_back("random:16:20:4");
  struct Strategy {
    Model model;
    SchedulerKind scheduler;
    MappingKind mapping;
    CutKind cuts;
  };
  std::vector<Strategy> strategies;
  for (auto s : {SchedulerKind::Ecmas, SchedulerKind::CircuitOrder, SchedulerKind::TimeFirst, SchedulerKind::ChannelFirst})
    strategies.push_back({Model::DoubleDefect, s, MappingKind::Ecmas, CutKind::Ecmas});
  for (auto m : {MappingKind::Snake, MappingKind::Random})
    strategies.push_back({Model::DoubleDefect, SchedulerKind::Ecmas, m, CutKind::Ecmas});
  for (auto k : {CutKind::Random, CutKind::MaxCut})
    strategies.push_back({Model::DoubleDefect, SchedulerKind::Ecmas, MappingKind::Ecmas, k});
  for (auto s : {SchedulerKind::Ecmas, SchedulerKind::CircuitOrder})
    for (auto m : {MappingKind::Ecmas, MappingKind::Snake, MappingKind::Random})
      strategies.push_back({Model::LatticeSurgery, s, m, CutKind::Ecmas});
  std::vector<RunConfig> configs;
  for (const auto& circuit : corpus) {
    for (const auto& st : strategies) {
      for (const std::string chip : {"min", "4x", "bw2"}) {
        for (std::uint64_t seed = 1; seed <= 2; ++seed) {
          auto c = config(circuit, st.model, chip);
          c.scheduler = st.scheduler;
          c.mapping = st.mapping;
          c.cuts = st.cuts;
          c.seed = seed;
          configs.push_back(c);
        }
      }
    }
    for (auto model : {Model::DoubleDefect, Model::LatticeSurgery}) {
      auto c = config(circuit, model, "sufficient");
      c.scheduler = SchedulerKind::ReSu;
      configs.push_back(c);
    }
  }
  SweepOptions opts;
  opts.workers = 4;
  opts.timing_repeats = 1;
  const auto reports = sweep(configs, opts);
  int emitted = 0, good = 0, infeasible = 0, other = 0;
  for (const auto& r : reports) {
    if (!r.error.empty()) {
      (r.error.find("infeasible") != std::string::npos || r.error.find("cannot be routed") != std::string::npos
           ? infeasible
           : other)++;
      continue;
    }
    ++emitted;
    good += r.valid && r.violations.empty() && r.delta >= r.alpha;
  }
  return {emitted == good && other == 0,
          std::to_string(good) + "/" + std::to_string(emitted) + " schedules valid with delta >= alpha (" +
              std::to_string(infeasible) + " runs infeasible, " + std::to_string(other) + " errors)"};
}

Outcome ablation() {
  struct Variant {
    const char* name;
    SchedulerKind s;
    MappingKind m;
    CutKind c;
  };
  const std::vector<Variant> variants{{"ecmas", SchedulerKind::Ecmas, MappingKind::Ecmas, CutKind::Ecmas},
                                      {"random-cuts", SchedulerKind::Ecmas, MappingKind::Ecmas, CutKind::Random},
                                      {"maxcut", SchedulerKind::Ecmas, MappingKind::Ecmas, CutKind::MaxCut},
                                      {"circuit-order", SchedulerKind::CircuitOrder, MappingKind::Ecmas, CutKind::Ecmas},
                                      {"time-first", SchedulerKind::TimeFirst, MappingKind::Ecmas, CutKind::Ecmas},
                                      {"channel-first", SchedulerKind::ChannelFirst, MappingKind::Ecmas, CutKind::Ecmas},
                                      {"snake", SchedulerKind::Ecmas, MappingKind::Snake, CutKind::Ecmas}};
  std::vector<RunConfig> configs;
  for (const auto& v : variants) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      auto c = config("random:16:20:4", Model::DoubleDefect, "min");
      c.scheduler = v.s;
      c.mapping = v.m;
      c.cuts = v.c;
      c.seed = seed;
      configs.push_back(c);
    }
  }
  SweepOptions opts;
  opts.workers = 4;
  opts.timing_repeats = 1;
  const auto reports = sweep(configs, opts);
  std::vector<double> mean(variants.size(), 0);
  bool clean = true;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    clean = clean && reports[i].valid;
    mean[i / 50] += reports[i].delta / 50.0;
  }
  bool pass = clean;
  std::string detail = "ecmas " + fmt("%.2f", mean[0]);
  for (std::size_t v = 1; v < variants.size(); ++v) {
    pass = pass && mean[0] <= 1.02 * mean[v];
    detail += std::string(", ") + variants[v].name + " " + fmt("%.2f", mean[v]);
  }
  return {pass, detail};
}

Outcome scalability() {
  bool pass = true;
  std::string detail;
  for (Model model : {Model::DoubleDefect, Model::LatticeSurgery}) {
    std::map<std::string, double> mean;
    std::vector<RunConfig> configs;
    for (const std::string chip : {"bw1", "bw2"}) {
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto c = config("random:49:50:21", model, chip);
        c.seed = seed;
        configs.push_back(c);
      }
    }
    SweepOptions opts;
    opts.workers = 4;
    opts.timing_repeats = 1;
    for (const auto& r : sweep(configs, opts)) {
      pass = pass && r.valid;
      mean[r.chip] += r.delta / 10.0;
    }
    const double cut = 100.0 * (mean["bw1"] - mean["bw2"]) / mean["bw1"];
    pass = pass && cut >= 5.0;
    detail += (detail.empty() ? "" : ", ") + to_string(model) + " " + fmt("%.1f", mean["bw1"]) + " -> " +
              fmt("%.1f", mean["bw2"]) + " (" + fmt("%.1f", cut) + "%)";
  }
  return {pass, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 golden lower-bound-tight results", golden},
      {"2 five independent gates in one cycle", motivation},
      {"3 simultaneous routing of capacity(b) gates", batch_routing},
      {"4 consecutive layers are bipartite", layer_pairs},
      {"5 sufficient-resource schedule within 2.5x of optimal", sufficient_ratio},
      {"6 universal validity and delta >= alpha", validity},
      {"7 ablation means (2% tolerance)", ablation},
      {"8 bandwidth 2 beats bandwidth 1 by >= 5%", scalability},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::printf("%s  %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
