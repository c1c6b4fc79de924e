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

#include "mixsched/drift.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "mixsched/controller.h"

namespace mixsched {
namespace {

// Two-sided 95% standard normal quantile.
constexpr double kZ975 = 1.959963984540054;

}  // namespace

DriftSample drift_sample(const NetState& before, const NetState& after) {
  return {static_cast<double>(before.total()), lyapunov(before), lyapunov(after)};
}

DriftReport drift_diagnostic(std::span<const DriftSample> samples,
                             std::size_t bin_count, std::size_t min_frames) {
  if (samples.size() < min_frames) {
    throw std::invalid_argument("drift diagnostic needs at least " +
                                std::to_string(min_frames) + " frames, got " +
                                std::to_string(samples.size()));
  }
  if (bin_count == 0 || bin_count > samples.size()) {
    throw std::invalid_argument("invalid drift bin count");
  }
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return samples[a].load < samples[b].load;
  });

  DriftReport report;
  const std::size_t n = samples.size();
  for (std::size_t b = 0; b < bin_count; ++b) {
    const std::size_t lo = b * n / bin_count;
    const std::size_t hi = (b + 1) * n / bin_count;
    DriftBin bin;
    bin.count = hi - lo;
    bin.load_min = samples[order[lo]].load;
    bin.load_max = samples[order[hi - 1]].load;
    double sum = 0.0;
    for (std::size_t i = lo; i < hi; ++i) sum += samples[order[i]].drift();
    bin.mean_drift = sum / static_cast<double>(bin.count);
    double ss = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double dev = samples[order[i]].drift() - bin.mean_drift;
      ss += dev * dev;
    }
    const double se =
        bin.count > 1
            ? std::sqrt(ss / static_cast<double>(bin.count - 1) /
                        static_cast<double>(bin.count))
            : 0.0;
    bin.ci_low = bin.mean_drift - kZ975 * se;
    bin.ci_high = bin.mean_drift + kZ975 * se;
    report.bins.push_back(bin);
  }
  return report;
}

}  // namespace mixsched
