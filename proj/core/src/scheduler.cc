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

#include "mixsched/scheduler.h"

#include <algorithm>
#include <limits>

#include "mixsched/errors.h"

namespace mixsched {

namespace {

void check_sizes(std::size_t links, std::span<const Count> a,
                 std::span<const Count> c, const WeightVector& w, int slots) {
  if (a.size() != links || c.size() != links || w.inelastic.size() != links ||
      w.elastic.size() != links) {
    throw std::invalid_argument("scheduler inputs disagree on the link count");
  }
  if (slots < 1) throw std::invalid_argument("a frame needs at least one slot");
}

SlotAllocation allocate_link(double w_inelastic, double w_elastic,
                             Count capacity, Count budget) {
  SlotAllocation out;
  if (capacity <= 0) return out;
  if (w_inelastic > 0.0 && w_inelastic >= w_elastic) {
    out.inelastic = std::min(capacity, std::max<Count>(budget, 0));
  }
  if (w_elastic > 0.0) out.elastic = capacity - out.inelastic;
  return out;
}

double allocation_value(const SlotAllocation& a, double w_inelastic,
                        double w_elastic) {
  return w_inelastic * static_cast<double>(a.inelastic) +
         w_elastic * static_cast<double>(a.elastic);
}

// Depth-first search over non-decreasing sequences of activation-set
// indices. A link's frame gain depends only on how many slots it is active
// in, so gains are tabulated up front and updated incrementally.
class MultisetSearch {
 public:
  MultisetSearch(const std::vector<LinkSet>& sets,
                 std::vector<std::vector<double>> gain, int slots)
      : sets_(sets),
        gain_(std::move(gain)),
        slots_(slots),
        active_count_(gain_.size(), 0),
        path_(slots),
        best_path_(slots, 0) {}

  const std::vector<std::size_t>& run() {
    descend(0, 0, 0.0);
    return best_path_;
  }

 private:
  void descend(int depth, std::size_t first, double value) {
    if (depth == slots_) {
      if (value > best_value_) {
        best_value_ = value;
        best_path_ = path_;
      }
      return;
    }
    for (std::size_t i = first; i < sets_.size(); ++i) {
      double next = value;
      for (LinkId l : sets_[i]) {
        const int n = active_count_[l]++;
        next += gain_[l][n + 1] - gain_[l][n];
      }
      path_[depth] = i;
      descend(depth + 1, i, next);
      for (LinkId l : sets_[i]) --active_count_[l];
    }
  }

  const std::vector<LinkSet>& sets_;
  std::vector<std::vector<double>> gain_;
  int slots_;
  std::vector<int> active_count_;
  std::vector<std::size_t> path_;
  std::vector<std::size_t> best_path_;
  double best_value_ = -std::numeric_limits<double>::infinity();
};

}  // namespace

FrameSchedule::FrameSchedule(std::size_t links, int slots)
    : links_(links),
      slots_(slots),
      inelastic_(links * slots, 0),
      elastic_(links * slots, 0) {}

Count FrameSchedule::inelastic_total(LinkId l) const {
  Count total = 0;
  for (int t = 0; t < slots_; ++t) total += inelastic(l, t);
  return total;
}

Count FrameSchedule::elastic_total(LinkId l) const {
  Count total = 0;
  for (int t = 0; t < slots_; ++t) total += elastic(l, t);
  return total;
}

std::vector<Count> FrameSchedule::inelastic_totals() const {
  std::vector<Count> out(links_);
  for (LinkId l = 0; l < links_; ++l) out[l] = inelastic_total(l);
  return out;
}

std::vector<Count> FrameSchedule::elastic_totals() const {
  std::vector<Count> out(links_);
  for (LinkId l = 0; l < links_; ++l) out[l] = elastic_total(l);
  return out;
}

bool FrameSchedule::empty() const {
  return std::all_of(inelastic_.begin(), inelastic_.end(),
                     [](Count v) { return v == 0; }) &&
         std::all_of(elastic_.begin(), elastic_.end(),
                     [](Count v) { return v == 0; });
}

WeightVector compute_weights(const NetState& state,
                             std::span<const LinkConfig> links, double epsilon,
                             ChannelMode mode) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (state.link_count() != links.size()) {
    throw std::invalid_argument("state and link configuration sizes differ");
  }
  WeightVector w;
  w.inelastic.resize(links.size());
  w.elastic.resize(links.size());
  for (std::size_t l = 0; l < links.size(); ++l) {
    const double scale =
        mode == ChannelMode::kUnknown ? links[l].channel.mean() : 1.0;
    w.inelastic[l] = (links[l].bonus_weight / epsilon +
                      static_cast<double>(state.deficits[l])) * scale;
    w.elastic[l] = static_cast<double>(state.queues[l]) * scale;
  }
  return w;
}

std::vector<SlotAllocation> allocate_slot(std::span<const LinkId> active,
                                          const WeightVector& weights,
                                          std::span<const Count> capacity,
                                          std::span<const Count> inelastic_budget) {
  std::vector<SlotAllocation> out(weights.link_count());
  for (LinkId l : active) {
    out[l] = allocate_link(weights.inelastic[l], weights.elastic[l], capacity[l],
                           inelastic_budget[l]);
  }
  return out;
}

double schedule_objective(const FrameSchedule& s, const WeightVector& weights) {
  double total = 0.0;
  for (LinkId l = 0; l < s.link_count(); ++l) {
    total += weights.inelastic[l] * static_cast<double>(s.inelastic_total(l)) +
             weights.elastic[l] * static_cast<double>(s.elastic_total(l));
  }
  return total;
}

OptimalScheduler::OptimalScheduler(const InterferenceGraph& graph,
                                   std::size_t cap)
    : links_(graph.link_count()), sets_(maximal_independent_sets(graph, cap)) {}

FrameSchedule OptimalScheduler::schedule(std::span<const Count> inelastic_arrivals,
                                         std::span<const Count> capacity,
                                         const WeightVector& weights,
                                         int slots) const {
  check_sizes(links_, inelastic_arrivals, capacity, weights, slots);

  std::vector<std::vector<double>> gain(links_, std::vector<double>(slots + 1));
  for (LinkId l = 0; l < links_; ++l) {
    for (int n = 1; n <= slots; ++n) {
      const SlotAllocation a = allocate_link(
          weights.inelastic[l], weights.elastic[l], capacity[l] * n,
          inelastic_arrivals[l]);
      gain[l][n] = allocation_value(a, weights.inelastic[l], weights.elastic[l]);
    }
  }
  const std::vector<std::size_t> chosen =
      MultisetSearch(sets_, std::move(gain), slots).run();

  FrameSchedule out(links_, slots);
  std::vector<Count> budget(inelastic_arrivals.begin(), inelastic_arrivals.end());
  for (int t = 0; t < slots; ++t) {
    const auto alloc = allocate_slot(sets_[chosen[t]], weights, capacity, budget);
    for (LinkId l : sets_[chosen[t]]) {
      out.inelastic(l, t) = alloc[l].inelastic;
      out.elastic(l, t) = alloc[l].elastic;
      budget[l] -= alloc[l].inelastic;
    }
  }
  return out;
}

FrameSchedule optimal_schedule(std::span<const Count> inelastic_arrivals,
                               std::span<const Count> capacity,
                               const WeightVector& weights, int slots,
                               const InterferenceGraph& graph) {
  return OptimalScheduler(graph).schedule(inelastic_arrivals, capacity, weights,
                                          slots);
}

FrameSchedule greedy_schedule(std::span<const Count> inelastic_arrivals,
                              std::span<const Count> capacity,
                              const WeightVector& weights, int slots,
                              const InterferenceGraph& graph) {
  const std::size_t n = graph.link_count();
  check_sizes(n, inelastic_arrivals, capacity, weights, slots);
  FrameSchedule out(n, slots);
  std::vector<Count> budget(inelastic_arrivals.begin(), inelastic_arrivals.end());
  std::vector<double> gain(n);
  std::vector<char> available(n);
  for (int t = 0; t < slots; ++t) {
    for (LinkId l = 0; l < n; ++l) {
      gain[l] = allocation_value(
          allocate_link(weights.inelastic[l], weights.elastic[l], capacity[l],
                        budget[l]),
          weights.inelastic[l], weights.elastic[l]);
      available[l] = gain[l] > 0.0;
    }
    LinkSet active;
    while (true) {
      std::optional<LinkId> pick;
      for (LinkId l = 0; l < n; ++l) {
        if (available[l] && (!pick || gain[l] > gain[*pick])) pick = l;
      }
      if (!pick) break;
      active.push_back(*pick);
      available[*pick] = 0;
      for (LinkId nb : graph.neighbors(*pick)) available[nb] = 0;
    }
    std::sort(active.begin(), active.end());
    const auto alloc = allocate_slot(active, weights, capacity, budget);
    for (LinkId l : active) {
      out.inelastic(l, t) = alloc[l].inelastic;
      out.elastic(l, t) = alloc[l].elastic;
      budget[l] -= alloc[l].inelastic;
    }
  }
  return out;
}

void validate_schedule(const FrameSchedule& s,
                       std::span<const Count> inelastic_arrivals,
                       std::span<const Count> capacity,
                       const InterferenceGraph& graph, ChannelMode mode) {
  const std::size_t n = graph.link_count();
  if (s.link_count() != n || inelastic_arrivals.size() != n ||
      capacity.size() != n || s.slots() < 1) {
    throw ScheduleError(ViolationKind::kShape,
                        "schedule dimensions do not match the network");
  }
  for (LinkId l = 0; l < n; ++l) {
    const Count bound = mode == ChannelMode::kUnknown ? 1 : capacity[l];
    for (int t = 0; t < s.slots(); ++t) {
      if (s.inelastic(l, t) < 0 || s.elastic(l, t) < 0) {
        throw ScheduleError(ViolationKind::kNegative,
                            "negative allocation on link " + std::to_string(l) +
                                ", slot " + std::to_string(t),
                            l, t);
      }
      if (s.inelastic(l, t) + s.elastic(l, t) > bound) {
        throw ScheduleError(ViolationKind::kCapacity,
                            "link " + std::to_string(l) + " exceeds capacity " +
                                std::to_string(bound) + " in slot " +
                                std::to_string(t),
                            l, t);
      }
    }
    if (s.inelastic_total(l) > inelastic_arrivals[l]) {
      throw ScheduleError(ViolationKind::kBudget,
                          "link " + std::to_string(l) + " schedules " +
                              std::to_string(s.inelastic_total(l)) +
                              " inelastic packets but only " +
                              std::to_string(inelastic_arrivals[l]) + " arrived",
                          l);
    }
  }
  for (int t = 0; t < s.slots(); ++t) {
    for (const auto& [a, b] : graph.conflict_pairs()) {
      if (s.active(a, t) && s.active(b, t)) {
        throw ScheduleError(ViolationKind::kInterference,
                            "conflicting links " + std::to_string(a) + " and " +
                                std::to_string(b) + " both active in slot " +
                                std::to_string(t),
                            a, t);
      }
    }
  }
}

Scheduler::Scheduler(const InterferenceGraph& graph, SchedulerKind kind,
                     std::size_t cap)
    : graph_(&graph), kind_(kind) {
  if (kind == SchedulerKind::kOptimal) optimal_.emplace(graph, cap);
}

FrameSchedule Scheduler::schedule(std::span<const Count> inelastic_arrivals,
                                  std::span<const Count> capacity,
                                  const WeightVector& weights, int slots) const {
  if (optimal_) {
    return optimal_->schedule(inelastic_arrivals, capacity, weights, slots);
  }
  return greedy_schedule(inelastic_arrivals, capacity, weights, slots, *graph_);
}

}  // namespace mixsched
