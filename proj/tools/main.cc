// Copyright 2026 The mixsched Authors
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

// mixsched: joint congestion control and max-weight frame scheduling for
// mixed elastic/inelastic wireless traffic.
//
//   mixsched simulate      --config PATH [--seed N --frames N --out DIR ...]
//   mixsched solve-offline --config PATH [--epsilon E --iterations K ...]
//   mixsched compare       --config PATH ...
//   mixsched sweep         --config PATH --epsilons 0.2,0.1,0.05 [--offline]
//   mixsched drift         --config PATH | --trace-file PATH
//
// Exit codes: 0 success, 2 configuration error, 3 QoS infeasible,
// 4 runtime failure.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mixsched/config.h"
#include "mixsched/drift.h"
#include "mixsched/dual_solver.h"
#include "mixsched/errors.h"
#include "mixsched/io.h"
#include "mixsched/simulation.h"

namespace {

using namespace mixsched;

constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitRuntime = 4;

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> frames;
  std::optional<std::string> out;
  std::optional<std::string> scheduler;
  std::optional<std::string> trace;
  std::optional<double> epsilon;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool config_required = true) {
  auto* c = cmd->add_option("--config", o.config, "Configuration document (JSON)");
  if (config_required) c->required();
  cmd->add_option("--seed", o.seed, "Random seed");
  cmd->add_option("--frames", o.frames, "Number of frames to simulate");
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--scheduler", o.scheduler, "optimal or greedy")
      ->check(CLI::IsMember({"optimal", "greedy"}));
  cmd->add_option("--trace", o.trace, "Write the per-frame trace CSV")
      ->check(CLI::IsMember({"on", "off"}));
}

SimConfig resolve(const CommonOptions& o, bool apply_epsilon = true) {
  SimConfig cfg = load_config_file(o.config);
  if (o.seed) cfg.seed = *o.seed;
  if (o.frames) {
    if (*o.frames < 1) throw ConfigError("--frames", "must be at least 1");
    cfg.frames = *o.frames;
  }
  if (o.out) cfg.output_dir = *o.out;
  if (o.scheduler) {
    cfg.scheduler =
        *o.scheduler == "optimal" ? SchedulerKind::kOptimal : SchedulerKind::kGreedy;
  }
  if (o.trace) cfg.trace = *o.trace == "on";
  if (apply_epsilon && o.epsilon) cfg.epsilon = *o.epsilon;
  cfg.validate();
  return cfg;
}

void print_metrics(const Metrics& m) {
  std::printf("%-6s %12s %12s %12s %12s %10s\n", "link", "deficit", "queue",
              "inelastic", "elastic", "drop");
  for (std::size_t l = 0; l < m.links.size(); ++l) {
    const LinkMetrics& lm = m.links[l];
    std::printf("%-6zu %12.4f %12.4f %12.6f %12.6f %10.6f\n", l + 1,
                lm.mean_deficit, lm.mean_queue, lm.inelastic_rate,
                lm.elastic_rate, lm.drop_probability);
  }
  std::printf("frames %llu  total load %.4f  objective %.6f\n",
              static_cast<unsigned long long>(m.frames), m.total_load(),
              m.objective());
}

int run_simulate(const CommonOptions& o) {
  const SimConfig cfg = resolve(o);
  const Metrics m = simulate_to_directory(cfg);
  print_metrics(m);
  std::printf("wrote %s\n", (cfg.output_dir / "metrics.csv").string().c_str());
  return 0;
}

struct OfflineOptions {
  double step = 0.01;
  std::uint64_t iterations = 50000;
  std::string engine = "exact";
  std::size_t samples = 1000;
};

OfflineSolution solve(const SimConfig& cfg, const OfflineOptions& off,
                      DualTraceWriter* trace) {
  const ExpectationEngine engine =
      off.engine == "exact" ? ExpectationEngine::Exact()
                            : ExpectationEngine::MonteCarlo(off.samples, cfg.seed);
  DualObserver observer;
  if (trace) {
    observer = [trace](const DualState& s, const IterateRecord& r) {
      trace->write(s, r);
    };
  }
  return solve_offline(offline_problem(cfg), off.step, off.iterations, engine,
                       observer);
}

int run_solve_offline(const CommonOptions& o, const OfflineOptions& off) {
  const SimConfig cfg = resolve(o, false);
  std::filesystem::create_directories(cfg.output_dir);
  std::optional<DualTraceWriter> trace;
  if (cfg.trace) trace.emplace(cfg.output_dir / "offline_trace.csv");
  const OfflineSolution sol = solve(cfg, off, trace ? &*trace : nullptr);
  if (trace) trace->close();
  const std::string json = offline_solution_json(sol, offline_problem(cfg));
  write_text_file(json, cfg.output_dir / "offline.json");
  std::cout << json;
  return 0;
}

int run_compare(const CommonOptions& o) {
  const SimConfig cfg = resolve(o);
  const SchedulerComparison c = compare_schedulers(cfg);
  std::filesystem::create_directories(cfg.output_dir);
  write_comparison_csv(c, cfg.output_dir / "compare.csv");
  write_metrics_csv(c.optimal, cfg.output_dir / "metrics_optimal.csv");
  write_metrics_csv(c.greedy, cfg.output_dir / "metrics_greedy.csv");
  std::printf("%-6s %14s %14s %14s %14s %10s %10s\n", "link", "opt inelastic",
              "grd inelastic", "opt elastic", "grd elastic", "opt drop",
              "grd drop");
  for (std::size_t l = 0; l < c.optimal.links.size(); ++l) {
    const LinkMetrics& a = c.optimal.links[l];
    const LinkMetrics& b = c.greedy.links[l];
    std::printf("%-6zu %14.6f %14.6f %14.6f %14.6f %10.6f %10.6f\n", l + 1,
                a.inelastic_rate, b.inelastic_rate, a.elastic_rate,
                b.elastic_rate, a.drop_probability, b.drop_probability);
  }
  std::printf("total deficit: optimal %.4f  greedy %.4f\n",
              c.optimal.total_deficit(), c.greedy.total_deficit());
  return 0;
}

int run_sweep(const CommonOptions& o, const std::vector<double>& epsilons,
              std::optional<double> offline_objective, bool solve_offline_first,
              const OfflineOptions& off) {
  if (epsilons.size() < 2) {
    throw ConfigError("--epsilons", "a sweep needs at least two values");
  }
  const SimConfig cfg = resolve(o, false);
  if (solve_offline_first) offline_objective = solve(cfg, off, nullptr).objective;
  const auto points = epsilon_sweep(cfg, epsilons, offline_objective);
  std::filesystem::create_directories(cfg.output_dir);
  write_sweep_csv(points, cfg.output_dir / "sweep.csv");
  std::printf("%-10s %14s %14s %14s\n", "epsilon", "total load", "objective", "gap");
  for (const SweepPoint& p : points) {
    std::printf("%-10g %14.4f %14.6f %14s\n", p.epsilon, p.metrics.total_load(),
                p.metrics.objective(),
                p.gap ? std::to_string(*p.gap).c_str() : "-");
  }
  return 0;
}

int run_drift(const CommonOptions& o, const std::string& trace_file,
              std::size_t bins) {
  std::vector<DriftSample> samples;
  std::filesystem::path out_dir = o.out ? *o.out : "out";
  if (!trace_file.empty()) {
    samples = drift_samples_from_trace(read_trace_csv(trace_file));
  } else {
    if (o.config.empty()) throw ConfigError("--config", "required without --trace-file");
    const SimConfig cfg = resolve(o);
    out_dir = cfg.output_dir;
    samples.reserve(cfg.frames);
    run_simulation(cfg, [&](const FrameObservation&, const NetState& before,
                            const NetState& after) {
      samples.push_back(drift_sample(before, after));
    });
  }
  const DriftReport report = drift_diagnostic(samples, bins);
  std::filesystem::create_directories(out_dir);
  write_drift_csv(report, out_dir / "drift.csv");
  std::printf("%-4s %10s %10s %8s %14s %14s %14s\n", "bin", "load min",
              "load max", "frames", "mean dV", "ci low", "ci high");
  for (std::size_t b = 0; b < report.bins.size(); ++b) {
    const DriftBin& bin = report.bins[b];
    std::printf("%-4zu %10.0f %10.0f %8zu %14.4f %14.4f %14.4f\n", b + 1,
                bin.load_min, bin.load_max, bin.count, bin.mean_drift,
                bin.ci_low, bin.ci_high);
  }
  std::printf("top decile drift negative at 95%%: %s\n",
              report.top_decile_negative() ? "yes" : "no");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint congestion control and max-weight frame scheduling"};
  app.require_subcommand(1);

  CommonOptions common;
  OfflineOptions offline;

  auto* simulate = app.add_subcommand("simulate", "Run the online algorithm");
  add_common(simulate, common);
  simulate->add_option("--epsilon", common.epsilon, "Override the step size");

  auto* solve_cmd =
      app.add_subcommand("solve-offline", "Solve the static problem by dual iteration");
  add_common(solve_cmd, common);
  solve_cmd->add_option("--epsilon", offline.step, "Dual step size")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--iterations", offline.iterations, "Dual iterations")
      ->check(CLI::Range(2ULL, 1000000000000ULL));
  solve_cmd->add_option("--engine", offline.engine, "exact or monte-carlo")
      ->check(CLI::IsMember({"exact", "monte-carlo"}));
  solve_cmd->add_option("--samples", offline.samples, "Monte Carlo draws per iteration");

  auto* compare = app.add_subcommand("compare", "Optimal vs greedy scheduler");
  add_common(compare, common);
  compare->add_option("--epsilon", common.epsilon, "Override the step size");

  std::vector<double> epsilons;
  std::optional<double> offline_objective;
  bool solve_first = false;
  auto* sweep = app.add_subcommand("sweep", "Sweep the step size epsilon");
  add_common(sweep, common);
  sweep->add_option("--epsilons", epsilons, "Comma-separated epsilon values")
      ->delimiter(',')
      ->required();
  sweep->add_option("--offline-objective", offline_objective,
                    "Offline optimum for gap reporting");
  sweep->add_flag("--offline", solve_first,
                  "Solve the offline problem (exact engine) for gap reporting");

  std::string trace_file;
  std::size_t bins = 10;
  auto* drift = app.add_subcommand("drift", "Lyapunov drift diagnostic");
  add_common(drift, common, false);
  drift->add_option("--epsilon", common.epsilon, "Override the step size");
  drift->add_option("--trace-file", trace_file, "Analyse an existing trace CSV");
  drift->add_option("--bins", bins, "Number of load bins")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*simulate) return run_simulate(common);
    if (*solve_cmd) return run_solve_offline(common, offline);
    if (*compare) return run_compare(common);
    if (*sweep) {
      return run_sweep(common, epsilons, offline_objective, solve_first, offline);
    }
    if (*drift) return run_drift(common, trace_file, bins);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const QosInfeasibleError& e) {
    std::cerr << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitRuntime;
}
