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

#ifndef MIXSCHED_NETWORK_H_
#define MIXSCHED_NETWORK_H_

#include <cstddef>
#include <vector>

#include "mixsched/traffic.h"

namespace mixsched {

// Known: the channel is observed at the start of the frame and may carry
// several packets per slot. Unknown: a 0/1 channel revealed only after the
// frame; at most one packet per link per slot.
enum class ChannelMode { kKnown, kUnknown };

enum class SchedulerKind { kOptimal, kGreedy };

// Per-link parameters. lambda() is the inelastic arrival mean, loss_bound the
// admissible deadline-miss probability p, bonus_weight the extra weight w on
// inelastic service and x_max the cap on the admitted elastic rate.
struct LinkConfig {
  ArrivalModel arrivals = ArrivalModel::None();
  double loss_bound = 0.0;
  double bonus_weight = 0.0;
  ChannelModel channel = ChannelModel::Bernoulli(1.0);
  UtilitySpec utility = UtilitySpec::Log();
  double x_max = 10.0;

  double lambda() const { return arrivals.mean(); }
  // Service rate the loss bound demands, lambda * (1 - p).
  double required_rate() const { return lambda() * (1.0 - loss_bound); }
  // Throws ModelError.
  void validate() const;
};

// Deficit counters d and elastic queues q; never negative.
struct NetState {
  std::vector<Count> deficits;
  std::vector<Count> queues;

  NetState() = default;
  explicit NetState(std::size_t links) : deficits(links, 0), queues(links, 0) {}

  std::size_t link_count() const { return deficits.size(); }
  Count total() const;
  bool operator==(const NetState&) const = default;
};

}  // namespace mixsched

#endif  // MIXSCHED_NETWORK_H_
