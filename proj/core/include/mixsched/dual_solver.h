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

#ifndef MIXSCHED_DUAL_SOLVER_H_
#define MIXSCHED_DUAL_SOLVER_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "mixsched/network.h"
#include "mixsched/scheduler.h"
#include "mixsched/topology.h"

namespace mixsched {

// Static network the offline problem is posed on.
struct OfflineProblem {
  InterferenceGraph graph;
  std::vector<LinkConfig> links;
  int slots = 1;
  ChannelMode mode = ChannelMode::kKnown;
};

// How expectations over (arrivals, channel) are computed.
struct ExpectationEngine {
  enum class Kind { kExact, kMonteCarlo };

  Kind kind = Kind::kExact;
  // Exact: maximum number of joint outcomes. Monte Carlo: draws per call.
  std::size_t outcome_cap = 4096;
  std::size_t samples = 0;
  std::uint64_t seed = 1;

  static ExpectationEngine Exact(std::size_t outcome_cap = 4096) {
    return {Kind::kExact, outcome_cap, 0, 1};
  }
  // Throws std::invalid_argument for fewer than 100 samples.
  static ExpectationEngine MonteCarlo(std::size_t samples, std::uint64_t seed);
};

struct ServiceEstimate {
  std::vector<double> inelastic;
  std::vector<double> elastic;
  // Standard errors; zero for the exact engine.
  std::vector<double> inelastic_se;
  std::vector<double> elastic_se;
};

// Expected per-frame service of the max-weight schedule with coefficients
// `weights` (w + delta_i, delta_e). In unknown mode the schedule sees
// capacity 1 and weights scaled by the mean channel, and service is counted
// as mean channel times attempts. `round` selects the Monte Carlo substreams.
ServiceEstimate expected_service(const WeightVector& weights,
                                 const OfflineProblem& problem,
                                 const OptimalScheduler& scheduler,
                                 const ExpectationEngine& engine,
                                 std::uint64_t round = 0);

// Lagrange multipliers of the QoS (delta_i) and capacity (delta_e)
// constraints.
struct DualState {
  std::vector<double> delta_i;
  std::vector<double> delta_e;
  double step = 0.01;
  std::uint64_t iteration = 0;

  DualState() = default;
  DualState(std::size_t links, double step)
      : delta_i(links, 0.0), delta_e(links, 0.0), step(step) {}
};

struct IterateRecord {
  std::vector<double> x;
  std::vector<double> mu_i;
  std::vector<double> mu_e;
  // sum_l U_l(x_l) + w_l mu_i,l at this iterate
  double objective = 0.0;
};

struct DualStep {
  DualState next;
  IterateRecord record;
};

// One subgradient step:
//   delta_i <- [delta_i + step (lambda (1 - p) - mu_i)]^+
//   delta_e <- [delta_e + step (x - mu_e)]^+
DualStep dual_iterate(const DualState& state, const OfflineProblem& problem,
                      const OptimalScheduler& scheduler,
                      const ExpectationEngine& engine);

struct OfflineSolution {
  std::vector<double> x_star;
  std::vector<double> mu_i_star;
  std::vector<double> mu_e_star;
  double objective = 0.0;
  // mu_i - lambda (1 - p) and mu_e - x, per link.
  std::vector<double> inelastic_slack;
  std::vector<double> elastic_slack;
  DualState final_state;
  std::uint64_t iterations = 0;
};

using DualObserver = std::function<void(const DualState&, const IterateRecord&)>;

inline constexpr double kInfeasibleMultiplier = 1e4;
inline constexpr std::size_t kDivergenceWindow = 1000;

// Runs `iterations` dual steps and returns the ergodic average of the primal
// iterates over the second half. Throws QosInfeasibleError when a scaled
// deficit multiplier delta_i / step ends above kInfeasibleMultiplier while
// still rising over the last kDivergenceWindow iterates.
OfflineSolution solve_offline(const OfflineProblem& problem, double epsilon,
                              std::uint64_t iterations,
                              const ExpectationEngine& engine,
                              const DualObserver& observer = {});

}  // namespace mixsched

#endif  // MIXSCHED_DUAL_SOLVER_H_
