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

#include "mixsched/controller.h"

#include <algorithm>
#include <stdexcept>

namespace mixsched {

double congestion_control(double queue, const UtilitySpec& u, double epsilon,
                          double x_max) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(x_max > 0.0)) throw std::invalid_argument("x_max must be positive");
  if (!u.has_elastic_flow()) return 0.0;
  const double price = epsilon * std::max(queue, 0.0);
  if (price == 0.0) return x_max;
  // U(x) = s log x  =>  U'(x) = s / x = price.
  return std::min(x_max, u.scale / price);
}

double maximize_rate_by_bisection(const UtilitySpec& u, double price,
                                  double x_max, double tolerance) {
  if (!u.has_elastic_flow()) return 0.0;
  if (utility_derivative(u, x_max) >= price) return x_max;
  double lo = 0.0;
  double hi = x_max;
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (utility_derivative(u, mid) >= price) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Count admit_elastic(double x_star, RandomStream& rng) {
  return sample_poisson(x_star, rng);
}

ServiceCounts realized_service(const FrameSchedule& s,
                               std::span<const Count> channel, ChannelMode mode) {
  ServiceCounts out{s.inelastic_totals(), s.elastic_totals()};
  if (mode == ChannelMode::kUnknown) {
    for (LinkId l = 0; l < s.link_count(); ++l) {
      out.inelastic[l] *= channel[l];
      out.elastic[l] *= channel[l];
    }
  }
  return out;
}

NetState update_state(const NetState& s, std::span<const Count> thinned,
                      std::span<const Count> elastic_admissions,
                      std::span<const Count> served_inelastic,
                      std::span<const Count> served_elastic) {
  NetState next(s.link_count());
  for (std::size_t l = 0; l < s.link_count(); ++l) {
    next.deficits[l] =
        std::max<Count>(s.deficits[l] + thinned[l] - served_inelastic[l], 0);
    next.queues[l] =
        std::max<Count>(s.queues[l] + elastic_admissions[l] - served_elastic[l], 0);
  }
  return next;
}

double lyapunov(const NetState& s) {
  double v = 0.0;
  for (std::size_t l = 0; l < s.link_count(); ++l) {
    const double d = static_cast<double>(s.deficits[l]);
    const double q = static_cast<double>(s.queues[l]);
    v += d * d + q * q;
  }
  return 0.5 * v;
}

FrameResult run_frame(const NetState& state, const FrameContext& ctx,
                      std::uint64_t frame) {
  const std::size_t n = ctx.links.size();
  if (state.link_count() != n || ctx.graph == nullptr ||
      ctx.graph->link_count() != n || ctx.scheduler == nullptr) {
    throw std::invalid_argument("frame context is inconsistent with the state");
  }
  FrameObservation obs;
  obs.frame = frame;
  obs.arrivals.resize(n);
  obs.channel.resize(n);
  obs.admitted_rate.resize(n);
  obs.elastic_admissions.resize(n);
  obs.thinned.resize(n);

  for (std::size_t l = 0; l < n; ++l) {
    RandomStream rng(ctx.seed, frame, l, StreamPurpose::kInelasticArrival);
    obs.arrivals[l] = ctx.links[l].arrivals.sample(rng);
  }
  auto draw_channel = [&] {
    for (std::size_t l = 0; l < n; ++l) {
      RandomStream rng(ctx.seed, frame, l, StreamPurpose::kChannel);
      obs.channel[l] = ctx.links[l].channel.sample(rng);
    }
  };
  if (ctx.mode == ChannelMode::kKnown) draw_channel();

  for (std::size_t l = 0; l < n; ++l) {
    const LinkConfig& link = ctx.links[l];
    obs.admitted_rate[l] =
        congestion_control(static_cast<double>(state.queues[l]), link.utility,
                           ctx.epsilon, link.x_max);
    RandomStream admit_rng(ctx.seed, frame, l, StreamPurpose::kElasticAdmission);
    obs.elastic_admissions[l] = admit_elastic(obs.admitted_rate[l], admit_rng);
    RandomStream thin_rng(ctx.seed, frame, l, StreamPurpose::kThinning);
    obs.thinned[l] = thin_arrivals(obs.arrivals[l], link.loss_bound, thin_rng);
  }

  const WeightVector weights =
      compute_weights(state, ctx.links, ctx.epsilon, ctx.mode);
  const std::vector<Count> capacity =
      ctx.mode == ChannelMode::kKnown ? obs.channel : std::vector<Count>(n, 1);
  obs.schedule = ctx.scheduler->schedule(obs.arrivals, capacity, weights, ctx.slots);
  obs.scheduled_inelastic = obs.schedule.inelastic_totals();
  obs.scheduled_elastic = obs.schedule.elastic_totals();

  if (ctx.mode == ChannelMode::kUnknown) draw_channel();
  ServiceCounts served = realized_service(obs.schedule, obs.channel, ctx.mode);
  obs.served_inelastic = std::move(served.inelastic);
  obs.served_elastic = std::move(served.elastic);

  obs.delivered_elastic.resize(n);
  for (std::size_t l = 0; l < n; ++l) {
    obs.delivered_elastic[l] = std::min(
        obs.served_elastic[l], state.queues[l] + obs.elastic_admissions[l]);
    const LinkConfig& link = ctx.links[l];
    if (link.utility.has_elastic_flow()) {
      obs.objective += utility_value(link.utility, obs.admitted_rate[l]);
    }
    obs.objective +=
        link.bonus_weight * static_cast<double>(obs.served_inelastic[l]);
  }

  FrameResult result;
  result.state = update_state(state, obs.thinned, obs.elastic_admissions,
                              obs.served_inelastic, obs.served_elastic);
  result.observation = std::move(obs);
  return result;
}

}  // namespace mixsched
