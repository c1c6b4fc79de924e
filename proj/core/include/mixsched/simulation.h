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

#ifndef MIXSCHED_SIMULATION_H_
#define MIXSCHED_SIMULATION_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mixsched/config.h"
#include "mixsched/controller.h"

namespace mixsched {

// Long-run averages for one link over the whole horizon.
struct LinkMetrics {
  double mean_deficit = 0.0;
  double mean_queue = 0.0;
  double inelastic_rate = 0.0;  // realized inelastic departures per frame
  double elastic_rate = 0.0;    // delivered elastic packets per frame
  double admitted_rate = 0.0;   // mean congestion-control rate
  Count inelastic_arrivals = 0;
  Count inelastic_dropped = 0;
  double drop_probability = 0.0;
  // mean of U(x(k)) + w * served_inelastic(k)
  double objective = 0.0;

  bool operator==(const LinkMetrics&) const = default;
};

struct Metrics {
  std::uint64_t frames = 0;
  std::vector<LinkMetrics> links;

  double total_deficit() const;
  double total_queue() const;
  double total_load() const { return total_deficit() + total_queue(); }
  double objective() const;
  // Over all links: dropped / arrived.
  double drop_probability() const;

  bool operator==(const Metrics&) const = default;
};

// Called once per frame with the pre- and post-frame state.
using FrameObserver = std::function<void(const FrameObservation&,
                                         const NetState& before,
                                         const NetState& after)>;

// Runs cfg.frames sequential frames from the zero state.
Metrics run_simulation(const SimConfig& cfg, const FrameObserver& observer = {});

// run_simulation plus metrics.csv (and trace.csv when cfg.trace) under
// cfg.output_dir.
Metrics simulate_to_directory(const SimConfig& cfg);

struct SchedulerComparison {
  Metrics optimal;
  Metrics greedy;
};

// Both arms share every arrival, channel, thinning and admission substream.
SchedulerComparison compare_schedulers(const SimConfig& cfg);

struct SweepPoint {
  double epsilon = 0.0;
  Metrics metrics;
  // offline objective minus online time-averaged objective
  std::optional<double> gap;
};

// One run per epsilon with the configured seed. Requires at least two values.
std::vector<SweepPoint> epsilon_sweep(const SimConfig& cfg,
                                      std::span<const double> epsilons,
                                      std::optional<double> offline_objective = {});

}  // namespace mixsched

#endif  // MIXSCHED_SIMULATION_H_
