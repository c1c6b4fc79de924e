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

#include "mixsched/dual_solver.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>

#include "mixsched/controller.h"
#include "mixsched/errors.h"
#include "mixsched/random.h"

namespace mixsched {

namespace {

struct Outcome {
  Count value;
  double probability;
};

std::vector<Outcome> support(const DiscreteDistribution& d) {
  std::vector<Outcome> out;
  for (std::size_t k = 0; k < d.pmf().size(); ++k) {
    if (d.pmf()[k] > 0.0) out.push_back({static_cast<Count>(k), d.pmf()[k]});
  }
  return out;
}

WeightVector scheduling_weights(const WeightVector& weights,
                                const OfflineProblem& problem) {
  if (problem.mode == ChannelMode::kKnown) return weights;
  WeightVector scaled = weights;
  for (std::size_t l = 0; l < problem.links.size(); ++l) {
    scaled.inelastic[l] *= problem.links[l].channel.mean();
    scaled.elastic[l] *= problem.links[l].channel.mean();
  }
  return scaled;
}

// Running first and second moments of per-link service.
struct Moments {
  explicit Moments(std::size_t n)
      : sum_i(n, 0.0), sum_e(n, 0.0), sq_i(n, 0.0), sq_e(n, 0.0) {}
  void add(const FrameSchedule& s, double weight) {
    for (LinkId l = 0; l < sum_i.size(); ++l) {
      const double i = static_cast<double>(s.inelastic_total(l));
      const double e = static_cast<double>(s.elastic_total(l));
      sum_i[l] += weight * i;
      sum_e[l] += weight * e;
      sq_i[l] += weight * i * i;
      sq_e[l] += weight * e * e;
    }
  }
  std::vector<double> sum_i, sum_e, sq_i, sq_e;
};

double least_squares_slope(const std::deque<double>& ys) {
  const double n = static_cast<double>(ys.size());
  if (ys.size() < 2) return 0.0;
  const double mean_x = 0.5 * (n - 1.0);
  double mean_y = 0.0;
  for (double y : ys) mean_y += y;
  mean_y /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t k = 0; k < ys.size(); ++k) {
    const double dx = static_cast<double>(k) - mean_x;
    sxy += dx * (ys[k] - mean_y);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace

ExpectationEngine ExpectationEngine::MonteCarlo(std::size_t samples,
                                                std::uint64_t seed) {
  if (samples < 100) {
    throw std::invalid_argument("monte-carlo engine needs at least 100 samples");
  }
  return {Kind::kMonteCarlo, 0, samples, seed};
}

ServiceEstimate expected_service(const WeightVector& weights,
                                 const OfflineProblem& problem,
                                 const OptimalScheduler& scheduler,
                                 const ExpectationEngine& engine,
                                 std::uint64_t round) {
  const std::size_t n = problem.links.size();
  const bool known = problem.mode == ChannelMode::kKnown;
  const WeightVector w = scheduling_weights(weights, problem);
  Moments moments(n);
  std::vector<Count> arrivals(n);
  std::vector<Count> capacity(n, 1);
  double total_weight = 0.0;

  if (engine.kind == ExpectationEngine::Kind::kExact) {
    // Mixed-radix walk over the joint support; digit 2l is link l's arrival
    // outcome and digit 2l+1 its channel outcome (known mode only).
    std::vector<std::vector<Outcome>> digits;
    double outcomes = 1.0;
    for (const LinkConfig& link : problem.links) {
      digits.push_back(support(link.arrivals.distribution()));
      digits.push_back(known ? support(link.channel.distribution())
                             : std::vector<Outcome>{{1, 1.0}});
      outcomes *= static_cast<double>(digits[digits.size() - 2].size()) *
                  static_cast<double>(digits.back().size());
    }
    if (outcomes > static_cast<double>(engine.outcome_cap)) {
      throw EnumerationCapError(
          "exact expectation needs " + std::to_string(outcomes) +
          " outcomes, above the cap of " + std::to_string(engine.outcome_cap) +
          "; use the monte-carlo engine");
    }
    std::vector<std::size_t> index(digits.size(), 0);
    while (true) {
      double p = 1.0;
      for (std::size_t l = 0; l < n; ++l) {
        const Outcome& a = digits[2 * l][index[2 * l]];
        const Outcome& c = digits[2 * l + 1][index[2 * l + 1]];
        arrivals[l] = a.value;
        if (known) capacity[l] = c.value;
        p *= a.probability * c.probability;
      }
      moments.add(scheduler.schedule(arrivals, capacity, w, problem.slots), p);
      total_weight += p;
      std::size_t d = 0;
      while (d < digits.size() && ++index[d] == digits[d].size()) index[d++] = 0;
      if (d == digits.size()) break;
    }
  } else {
    const std::uint64_t stream_seed = splitmix64(engine.seed ^ splitmix64(round));
    for (std::size_t draw = 0; draw < engine.samples; ++draw) {
      for (std::size_t l = 0; l < n; ++l) {
        RandomStream a_rng(stream_seed, draw, l, StreamPurpose::kInelasticArrival);
        arrivals[l] = problem.links[l].arrivals.sample(a_rng);
        if (known) {
          RandomStream c_rng(stream_seed, draw, l, StreamPurpose::kChannel);
          capacity[l] = problem.links[l].channel.sample(c_rng);
        }
      }
      moments.add(scheduler.schedule(arrivals, capacity, w, problem.slots), 1.0);
      total_weight += 1.0;
    }
  }

  ServiceEstimate out;
  out.inelastic.resize(n);
  out.elastic.resize(n);
  out.inelastic_se.assign(n, 0.0);
  out.elastic_se.assign(n, 0.0);
  for (std::size_t l = 0; l < n; ++l) {
    const double scale = known ? 1.0 : problem.links[l].channel.mean();
    const double mi = moments.sum_i[l] / total_weight;
    const double me = moments.sum_e[l] / total_weight;
    out.inelastic[l] = scale * mi;
    out.elastic[l] = scale * me;
    if (engine.kind == ExpectationEngine::Kind::kMonteCarlo) {
      const double m = total_weight;
      const double var_i = std::max(0.0, moments.sq_i[l] / m - mi * mi) * m / (m - 1);
      const double var_e = std::max(0.0, moments.sq_e[l] / m - me * me) * m / (m - 1);
      out.inelastic_se[l] = scale * std::sqrt(var_i / m);
      out.elastic_se[l] = scale * std::sqrt(var_e / m);
    }
  }
  return out;
}

DualStep dual_iterate(const DualState& state, const OfflineProblem& problem,
                      const OptimalScheduler& scheduler,
                      const ExpectationEngine& engine) {
  if (!(state.step > 0.0)) throw std::invalid_argument("step must be positive");
  const std::size_t n = problem.links.size();
  DualStep out;
  IterateRecord& rec = out.record;
  rec.x.resize(n);

  WeightVector w;
  w.inelastic.resize(n);
  w.elastic.resize(n);
  for (std::size_t l = 0; l < n; ++l) {
    const LinkConfig& link = problem.links[l];
    rec.x[l] = congestion_control(state.delta_e[l], link.utility, 1.0, link.x_max);
    w.inelastic[l] = link.bonus_weight + state.delta_i[l];
    w.elastic[l] = state.delta_e[l];
  }
  const ServiceEstimate mu =
      expected_service(w, problem, scheduler, engine, state.iteration);
  rec.mu_i = mu.inelastic;
  rec.mu_e = mu.elastic;

  out.next = state;
  out.next.iteration = state.iteration + 1;
  for (std::size_t l = 0; l < n; ++l) {
    const LinkConfig& link = problem.links[l];
    out.next.delta_i[l] = std::max(
        0.0, state.delta_i[l] + state.step * (link.required_rate() - rec.mu_i[l]));
    out.next.delta_e[l] =
        std::max(0.0, state.delta_e[l] + state.step * (rec.x[l] - rec.mu_e[l]));
    if (link.utility.has_elastic_flow()) {
      rec.objective += utility_value(link.utility, rec.x[l]);
    }
    rec.objective += link.bonus_weight * rec.mu_i[l];
  }
  return out;
}

OfflineSolution solve_offline(const OfflineProblem& problem, double epsilon,
                              std::uint64_t iterations,
                              const ExpectationEngine& engine,
                              const DualObserver& observer) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (iterations < 2) throw std::invalid_argument("need at least two iterations");
  if (problem.graph.link_count() != problem.links.size()) {
    throw std::invalid_argument("graph and link configuration sizes differ");
  }
  const std::size_t n = problem.links.size();
  const OptimalScheduler scheduler(problem.graph);
  const std::uint64_t average_from = iterations - iterations / 2;

  OfflineSolution sol;
  sol.x_star.assign(n, 0.0);
  sol.mu_i_star.assign(n, 0.0);
  sol.mu_e_star.assign(n, 0.0);
  std::vector<std::deque<double>> history(n);

  DualState state(n, epsilon);
  for (std::uint64_t k = 0; k < iterations; ++k) {
    DualStep step = dual_iterate(state, problem, scheduler, engine);
    if (observer) observer(state, step.record);
    if (k >= average_from) {
      for (std::size_t l = 0; l < n; ++l) {
        sol.x_star[l] += step.record.x[l];
        sol.mu_i_star[l] += step.record.mu_i[l];
        sol.mu_e_star[l] += step.record.mu_e[l];
      }
    }
    state = std::move(step.next);
    for (std::size_t l = 0; l < n; ++l) {
      history[l].push_back(state.delta_i[l]);
      if (history[l].size() > kDivergenceWindow) history[l].pop_front();
    }
  }

  for (std::size_t l = 0; l < n; ++l) {
    if (state.delta_i[l] / epsilon > kInfeasibleMultiplier &&
        least_squares_slope(history[l]) > 0.0) {
      throw QosInfeasibleError(
          l, "QoS infeasible: deficit multiplier of link " + std::to_string(l) +
                 " diverges (delta_i = " + std::to_string(state.delta_i[l]) + ")");
    }
  }

  const double count = static_cast<double>(iterations - average_from);
  sol.inelastic_slack.resize(n);
  sol.elastic_slack.resize(n);
  for (std::size_t l = 0; l < n; ++l) {
    const LinkConfig& link = problem.links[l];
    sol.x_star[l] /= count;
    sol.mu_i_star[l] /= count;
    sol.mu_e_star[l] /= count;
    sol.inelastic_slack[l] = sol.mu_i_star[l] - link.required_rate();
    sol.elastic_slack[l] = sol.mu_e_star[l] - sol.x_star[l];
    if (link.utility.has_elastic_flow()) {
      sol.objective += utility_value(link.utility, sol.x_star[l]);
    }
    sol.objective += link.bonus_weight * sol.mu_i_star[l];
  }
  sol.final_state = std::move(state);
  sol.iterations = iterations;
  return sol;
}

}  // namespace mixsched
