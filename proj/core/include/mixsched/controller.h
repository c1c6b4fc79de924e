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

#ifndef MIXSCHED_CONTROLLER_H_
#define MIXSCHED_CONTROLLER_H_

#include <cstdint>
#include <span>
#include <vector>

#include "mixsched/network.h"
#include "mixsched/random.h"
#include "mixsched/scheduler.h"
#include "mixsched/topology.h"

namespace mixsched {

// argmax over (0, x_max] of U(x)/epsilon - queue * x. Closed form for the
// log family; an empty queue admits x_max.
double congestion_control(double queue, const UtilitySpec& u, double epsilon,
                          double x_max);

// argmax over (0, x_max] of U(x) - price * x for any concave U, by bisection
// on U'(x) = price to absolute tolerance `tolerance`.
double maximize_rate_by_bisection(const UtilitySpec& u, double price,
                                  double x_max, double tolerance = 1e-9);

// Poisson(x_star) elastic admissions.
Count admit_elastic(double x_star, RandomStream& rng);

struct ServiceCounts {
  std::vector<Count> inelastic;
  std::vector<Count> elastic;
};

// Packets that actually got through. In unknown mode every attempt on link l
// succeeds iff c_l = 1 for the whole frame.
ServiceCounts realized_service(const FrameSchedule& s,
                               std::span<const Count> channel, ChannelMode mode);

// d' = [d + thinned - served_i]^+, q' = [q + admitted - served_e]^+
NetState update_state(const NetState& s, std::span<const Count> thinned,
                      std::span<const Count> elastic_admissions,
                      std::span<const Count> served_inelastic,
                      std::span<const Count> served_elastic);

// V(d, q) = 1/2 sum_l (d_l^2 + q_l^2)
double lyapunov(const NetState& s);

// Everything that happened on the network during one frame.
struct FrameObservation {
  std::uint64_t frame = 0;
  std::vector<Count> arrivals;            // a_i
  std::vector<Count> thinned;             // deficit-counter arrivals
  std::vector<Count> channel;             // c
  std::vector<double> admitted_rate;      // congestion-control output
  std::vector<Count> elastic_admissions;  // a_e
  FrameSchedule schedule;
  std::vector<Count> scheduled_inelastic;
  std::vector<Count> scheduled_elastic;
  std::vector<Count> served_inelastic;    // realized
  std::vector<Count> served_elastic;      // realized service offered
  std::vector<Count> delivered_elastic;   // min(served_elastic, q + a_e)
  // sum_l U_l(admitted_rate_l) + w_l * served_inelastic_l
  double objective = 0.0;

  bool operator==(const FrameObservation&) const = default;
};

struct FrameContext {
  const InterferenceGraph* graph = nullptr;
  std::span<const LinkConfig> links;
  const Scheduler* scheduler = nullptr;
  int slots = 1;
  double epsilon = 0.1;
  ChannelMode mode = ChannelMode::kKnown;
  std::uint64_t seed = 0;
};

struct FrameResult {
  NetState state;
  FrameObservation observation;
};

// One frame of the online algorithm: arrivals, channel (known mode), rate
// control, admissions, thinning, max-weight scheduling, realized service and
// the counter update, in that order.
FrameResult run_frame(const NetState& state, const FrameContext& ctx,
                      std::uint64_t frame);

}  // namespace mixsched

#endif  // MIXSCHED_CONTROLLER_H_
