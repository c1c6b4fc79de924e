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

#ifndef MIXSCHED_SCHEDULER_H_
#define MIXSCHED_SCHEDULER_H_

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixsched/network.h"
#include "mixsched/topology.h"

namespace mixsched {

// Per-link, per-slot packet allocation for one frame.
class FrameSchedule {
 public:
  FrameSchedule() = default;
  FrameSchedule(std::size_t links, int slots);

  std::size_t link_count() const { return links_; }
  int slots() const { return slots_; }

  Count& inelastic(LinkId l, int t) { return inelastic_[l * slots_ + t]; }
  Count inelastic(LinkId l, int t) const { return inelastic_[l * slots_ + t]; }
  Count& elastic(LinkId l, int t) { return elastic_[l * slots_ + t]; }
  Count elastic(LinkId l, int t) const { return elastic_[l * slots_ + t]; }

  bool active(LinkId l, int t) const {
    return inelastic(l, t) + elastic(l, t) > 0;
  }
  Count inelastic_total(LinkId l) const;
  Count elastic_total(LinkId l) const;
  std::vector<Count> inelastic_totals() const;
  std::vector<Count> elastic_totals() const;
  bool empty() const;

  bool operator==(const FrameSchedule&) const = default;

 private:
  std::size_t links_ = 0;
  int slots_ = 0;
  std::vector<Count> inelastic_;
  std::vector<Count> elastic_;
};

// Max-weight coefficients of inelastic and elastic service per link.
struct WeightVector {
  std::vector<double> inelastic;
  std::vector<double> elastic;

  std::size_t link_count() const { return inelastic.size(); }
};

struct SlotAllocation {
  Count inelastic = 0;
  Count elastic = 0;
  bool operator==(const SlotAllocation&) const = default;
};

// Known channel: W_i = w/epsilon + d, W_e = q. Unknown channel: both scaled by
// the mean channel.
WeightVector compute_weights(const NetState& state,
                             std::span<const LinkConfig> links, double epsilon,
                             ChannelMode mode);

// Best allocation of one slot given the set of active links. An active link
// with capacity c and remaining inelastic budget r sends min(c, r) inelastic
// packets and fills the rest with elastic ones when W_i >= W_e, and only
// elastic packets otherwise. A class with zero weight is never allocated.
std::vector<SlotAllocation> allocate_slot(std::span<const LinkId> active,
                                          const WeightVector& weights,
                                          std::span<const Count> capacity,
                                          std::span<const Count> inelastic_budget);

// sum_l W_i,l * sum_t s_i,l,t + W_e,l * sum_t s_e,l,t
double schedule_objective(const FrameSchedule& s, const WeightVector& weights);

// Exact max-weight frame scheduler. Searches multisets of T maximal
// independent sets, so the activation sets are enumerated once per graph.
class OptimalScheduler {
 public:
  explicit OptimalScheduler(const InterferenceGraph& graph,
                            std::size_t cap = kDefaultEnumerationCap);

  FrameSchedule schedule(std::span<const Count> inelastic_arrivals,
                         std::span<const Count> capacity,
                         const WeightVector& weights, int slots) const;

  const std::vector<LinkSet>& activation_sets() const { return sets_; }

 private:
  std::size_t links_;
  std::vector<LinkSet> sets_;
};

// Throws EnumerationCapError above the cap. Ties go to the lexicographically
// first multiset of activation sets.
FrameSchedule optimal_schedule(std::span<const Count> inelastic_arrivals,
                               std::span<const Count> capacity,
                               const WeightVector& weights, int slots,
                               const InterferenceGraph& graph);

// Slot-by-slot greedy: take the link with the largest slot gain, drop its
// interferers, repeat. A link's slot gain is the weighted value of the
// allocation allocate_slot would give it; zero-gain links are skipped and
// ties go to the lower index.
FrameSchedule greedy_schedule(std::span<const Count> inelastic_arrivals,
                              std::span<const Count> capacity,
                              const WeightVector& weights, int slots,
                              const InterferenceGraph& graph);

enum class ViolationKind { kShape, kNegative, kBudget, kCapacity, kInterference };

class ScheduleError : public std::runtime_error {
 public:
  ScheduleError(ViolationKind kind, const std::string& message,
                std::optional<LinkId> link = std::nullopt,
                std::optional<int> slot = std::nullopt)
      : std::runtime_error(message), kind_(kind), link_(link), slot_(slot) {}

  ViolationKind kind() const { return kind_; }
  std::optional<LinkId> link() const { return link_; }
  std::optional<int> slot() const { return slot_; }

 private:
  ViolationKind kind_;
  std::optional<LinkId> link_;
  std::optional<int> slot_;
};

// Checks the inelastic budget, the per-slot capacity (1 in unknown mode) and
// slot-wise independence. Throws ScheduleError naming the first violation.
void validate_schedule(const FrameSchedule& s,
                       std::span<const Count> inelastic_arrivals,
                       std::span<const Count> capacity,
                       const InterferenceGraph& graph, ChannelMode mode);

// Dispatches to the exact or greedy scheduler; the exact one keeps its
// enumerated activation sets.
class Scheduler {
 public:
  Scheduler(const InterferenceGraph& graph, SchedulerKind kind,
            std::size_t cap = kDefaultEnumerationCap);

  SchedulerKind kind() const { return kind_; }
  FrameSchedule schedule(std::span<const Count> inelastic_arrivals,
                         std::span<const Count> capacity,
                         const WeightVector& weights, int slots) const;

 private:
  const InterferenceGraph* graph_;
  SchedulerKind kind_;
  std::optional<OptimalScheduler> optimal_;
};

}  // namespace mixsched

#endif  // MIXSCHED_SCHEDULER_H_
