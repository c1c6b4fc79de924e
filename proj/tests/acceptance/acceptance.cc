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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.h"
#include "mixsched/config.h"
#include "mixsched/drift.h"
#include "mixsched/dual_solver.h"
#include "mixsched/io.h"
#include "mixsched/scheduler.h"
#include "mixsched/simulation.h"
#include "oracles.h"

namespace {

using namespace mixsched;

// Tolerances and experiment sizes.
constexpr int kOracleInstances = 600;
constexpr double kOracleSeconds = 60.0;
constexpr std::uint64_t kFrames = 100000;
constexpr std::uint64_t kSeeds[] = {1, 2, 3, 4, 5};
constexpr double kMaxDrop = 0.11;
constexpr double kRateSlack = 0.005;
constexpr double kGrowthLow = 1.2;
constexpr double kGrowthHigh = 4.0;
constexpr double kGapSlopeFactor = 2.0;
constexpr double kQueueOrderRatio = 10.0;
constexpr double kGreedyRelative = 0.05;
constexpr double kChiSquaredLevel = 0.01;
constexpr int kThinningDraws = 100000;
constexpr double kOfflineStep = 0.01;
constexpr std::uint64_t kOfflineIterations = 50000;
constexpr std::uint64_t kDeterminismFrames = 20000;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, const Outcome& o) {
  std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

SimConfig config(const std::string& name) {
  SimConfig cfg = load_config_file(fixture::config_path(name));
  cfg.frames = kFrames;
  return cfg;
}

SimConfig with_bonus(SimConfig cfg, double w) {
  for (auto& l : cfg.links) l.bonus_weight = w;
  return cfg;
}

Outcome scheduler_oracle() {
  std::mt19937_64 gen(20240601);
  const auto start = std::chrono::steady_clock::now();
  int mismatches = 0;
  for (int i = 0; i < kOracleInstances; ++i) {
    const auto in = oracle::random_instance(gen);
    std::vector<Conflict> c;
    for (auto [a, b] : in.edges) c.emplace_back(a, b);
    const InterferenceGraph g(in.n, c);
    const WeightVector w{in.w_inelastic, in.w_elastic};
    const auto s = optimal_schedule(in.arrivals, in.capacity, w, in.slots, g);
    if (schedule_objective(s, w) != oracle::brute_force_optimum(in)) ++mismatches;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {mismatches == 0 && secs < kOracleSeconds,
          fmt("%d instances, %d mismatches, %.1f s", kOracleInstances, mismatches, secs)};
}

struct TenLinkRuns {
  std::vector<Metrics> metrics;
  std::vector<DriftReport> drift;
};

TenLinkRuns ten_link_runs() {
  TenLinkRuns out;
  for (std::uint64_t seed : kSeeds) {
    SimConfig cfg = config("ten_link.cfg");
    cfg.seed = seed;
    std::vector<DriftSample> samples;
    samples.reserve(cfg.frames);
    out.metrics.push_back(run_simulation(
        cfg, [&](const FrameObservation&, const NetState& b, const NetState& a) {
          samples.push_back(drift_sample(b, a));
        }));
    out.drift.push_back(drift_diagnostic(samples));
  }
  return out;
}

Outcome qos(const std::vector<Metrics>& runs, double max_drop) {
  double worst = 0.0;
  for (const auto& m : runs) {
    for (const auto& l : m.links) worst = std::max(worst, l.drop_probability);
  }
  return {worst <= max_drop,
          fmt("worst drop %.5f over %zu runs (limit %.3f)", worst, runs.size(), max_drop)};
}

Outcome inelastic_rate(const std::vector<Metrics>& runs, const SimConfig& cfg) {
  double worst_margin = 1e300, worst_rate = 0.0, need = 0.0;
  for (const auto& m : runs) {
    for (std::size_t l = 0; l < m.links.size(); ++l) {
      const double floor = cfg.links[l].required_rate() - kRateSlack;
      const double margin = m.links[l].inelastic_rate - floor;
      if (margin < worst_margin) {
        worst_margin = margin;
        worst_rate = m.links[l].inelastic_rate;
        need = floor;
      }
    }
  }
  return {worst_margin >= 0.0, fmt("lowest rate %.5f (floor %.4f)", worst_rate, need)};
}

Outcome growth(const std::vector<SweepPoint>& sweep) {
  bool ok = true;
  std::string d;
  for (std::size_t i = 0; i + 1 < sweep.size(); ++i) {
    const double a = sweep[i].metrics.total_load(), b = sweep[i + 1].metrics.total_load();
    const double r = b / a;
    ok &= b > a && r >= kGrowthLow && r <= kGrowthHigh;
    d += fmt("eps %g->%g: %.3f->%.3f ratio %.3f; ", sweep[i].epsilon, sweep[i + 1].epsilon,
             a, b, r);
  }
  return {ok, d};
}

Outcome optimality_gap(const std::vector<SweepPoint>& sweep, double offline) {
  double num = 0.0, den = 0.0, worst_scaled = 0.0;
  for (const auto& p : sweep) {
    num += *p.gap * p.epsilon;
    den += p.epsilon * p.epsilon;
    worst_scaled = std::max(worst_scaled, *p.gap / p.epsilon);
  }
  const double slope = num / den;
  const SweepPoint& big = sweep.front();
  const SweepPoint& small = sweep.back();
  const double scaled_small = *small.gap / small.epsilon;
  const double scaled_big = *big.gap / big.epsilon;
  const bool ok = *small.gap < *big.gap && std::isfinite(slope) && slope > 0.0 &&
                  worst_scaled <= kGapSlopeFactor * slope &&
                  scaled_small <= kGapSlopeFactor * scaled_big;
  std::string d = fmt("offline %.5f; ", offline);
  for (const auto& p : sweep) d += fmt("gap(%g)=%.5f ", p.epsilon, *p.gap);
  d += fmt("; slope %.4f, max gap/eps %.4f", slope, worst_scaled);
  return {ok, d};
}

Outcome bonus_effect() {
  std::vector<double> deficit, queue;
  for (double w : {0.0, 3.0, 6.0}) {
    const Metrics m = run_simulation(with_bonus(config("ten_link.cfg"), w));
    deficit.push_back(m.total_deficit());
    queue.push_back(m.total_queue());
  }
  const bool decreasing = deficit[0] > deficit[1] && deficit[1] > deficit[2];
  const double qmax = *std::max_element(queue.begin(), queue.end());
  const double qmin = *std::min_element(queue.begin(), queue.end());
  return {decreasing && qmin > 0.0 && qmax / qmin < kQueueOrderRatio,
          fmt("deficit w=0,3,6: %.3f, %.3f, %.3f; queue %.3f, %.3f, %.3f", deficit[0],
              deficit[1], deficit[2], queue[0], queue[1], queue[2])};
}

Outcome greedy_closeness() {
  const SchedulerComparison c = compare_schedulers(config("ten_link.cfg"));
  double worst_i = 0.0, worst_e = 0.0, worst_drop = 0.0;
  std::size_t li = 0, le = 0;
  for (std::size_t l = 0; l < c.optimal.links.size(); ++l) {
    const LinkMetrics& o = c.optimal.links[l];
    const LinkMetrics& g = c.greedy.links[l];
    const double ri = std::abs(g.inelastic_rate - o.inelastic_rate) / o.inelastic_rate;
    const double re = std::abs(g.elastic_rate - o.elastic_rate) / o.elastic_rate;
    if (ri > worst_i) worst_i = ri, li = l;
    if (re > worst_e) worst_e = re, le = l;
    worst_drop = std::max({worst_drop, o.drop_probability, g.drop_probability});
  }
  return {worst_i <= kGreedyRelative && worst_e <= kGreedyRelative && worst_drop <= kMaxDrop,
          fmt("max relative diff inelastic %.4f (link %zu), elastic %.4f (link %zu); "
              "worst drop %.5f",
              worst_i, li + 1, worst_e, le + 1, worst_drop)};
}

Outcome drift(const std::vector<DriftReport>& reports) {
  bool ok = true;
  std::string d;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const DriftBin& b = reports[i].top_decile();
    ok &= reports[i].top_decile_negative();
    d += fmt("seed %llu: %.3f [%.3f, %.3f]; ", static_cast<unsigned long long>(kSeeds[i]),
             b.mean_drift, b.ci_low, b.ci_high);
  }
  return {ok, d};
}

Outcome thinning() {
  bool ok = true;
  std::string d;
  for (auto [a, p] : std::vector<std::pair<int, double>>{{1, 0.1}, {5, 0.1}, {5, 0.5}}) {
    std::vector<long> counts(a + 1, 0);
    for (int k = 0; k < kThinningDraws; ++k) {
      RandomStream r(31337, k, 0, StreamPurpose::kThinning);
      ++counts[thin_arrivals(a, p, r)];
    }
    const auto [stat, dof] = oracle::binomial_chi_squared(counts, a, 1.0 - p);
    const double crit = oracle::chi_squared_critical(dof, kChiSquaredLevel);
    ok &= stat < crit;
    d += fmt("(a=%d,p=%g) chi2 %.2f < %.2f df %d; ", a, p, stat, crit, dof);
  }
  return {ok, d};
}

Outcome unknown_channel() {
  std::vector<Metrics> runs;
  const SimConfig base = config("two_link_unknown.cfg");
  for (std::uint64_t seed : kSeeds) {
    SimConfig cfg = base;
    cfg.seed = seed;
    runs.push_back(run_simulation(cfg));
  }
  double max_drop_allowed = 0.0;
  for (const auto& l : base.links) max_drop_allowed = std::max(max_drop_allowed, l.loss_bound);
  const Outcome q = qos(runs, max_drop_allowed + 0.01);
  const Outcome r = inelastic_rate(runs, base);
  return {q.pass && r.pass, q.detail + "; " + r.detail};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  bool ok = true;
  std::string d;
  for (const char* name : {"ten_link.cfg", "two_link_unknown.cfg"}) {
    std::vector<std::filesystem::path> dirs;
    for (int rep = 0; rep < 2; ++rep) {
      SimConfig cfg = config(name);
      cfg.frames = kDeterminismFrames;
      cfg.seed = 99;
      cfg.trace = true;
      cfg.output_dir = fixture::temp_dir(std::string("acceptance_det_") + name +
                                         std::to_string(rep));
      simulate_to_directory(cfg);
      dirs.push_back(cfg.output_dir);
    }
    for (const char* file : {"metrics.csv", "trace.csv"}) {
      const std::string a = slurp(dirs[0] / file), b = slurp(dirs[1] / file);
      const bool same = !a.empty() && a == b;
      ok &= same;
      d += fmt("%s/%s %s (%zu bytes); ", name, file, same ? "identical" : "DIFFER",
               a.size());
    }
  }
  return {ok, d};
}

void run(int id, const char* name, const std::function<Outcome()>& f) {
  try {
    report(id, name, f());
  } catch (const std::exception& e) {
    report(id, name, {false, std::string("exception: ") + e.what()});
  }
}

}  // namespace

int main() {
  run(1, "scheduler oracle equivalence", scheduler_oracle);

  TenLinkRuns ten;
  try {
    ten = ten_link_runs();
  } catch (const std::exception& e) {
    std::printf("ten-link runs failed: %s\n", e.what());
  }
  const SimConfig ten_cfg = config("ten_link.cfg");
  run(2, "QoS satisfaction", [&] { return qos(ten.metrics, kMaxDrop); });
  run(3, "inelastic rate constraint", [&] { return inelastic_rate(ten.metrics, ten_cfg); });

  std::vector<SweepPoint> sweep;
  double offline = 0.0;
  try {
    const SimConfig two = config("two_link.cfg");
    offline = solve_offline(offline_problem(two), kOfflineStep, kOfflineIterations,
                            ExpectationEngine::Exact())
                  .objective;
    const std::vector<double> eps = {0.2, 0.1, 0.05};
    sweep = epsilon_sweep(two, eps, offline);
  } catch (const std::exception& e) {
    std::printf("two-link sweep failed: %s\n", e.what());
  }
  run(4, "O(1/eps) growth", [&] { return growth(sweep); });
  run(5, "O(eps) optimality gap", [&] { return optimality_gap(sweep, offline); });
  run(6, "effect of w", bonus_effect);
  run(7, "greedy closeness", greedy_closeness);
  run(8, "empirical drift", [&] { return drift(ten.drift); });
  run(9, "thinning chi-squared", thinning);
  run(10, "unknown-channel mode", unknown_channel);
  run(11, "determinism", determinism);

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
