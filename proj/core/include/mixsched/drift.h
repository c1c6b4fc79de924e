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

#ifndef MIXSCHED_DRIFT_H_
#define MIXSCHED_DRIFT_H_

#include <cstddef>
#include <span>
#include <vector>

#include "mixsched/network.h"

namespace mixsched {

// One frame's Lyapunov transition: the pre-frame load sum(d + q) and
// V before and after the frame.
struct DriftSample {
  double load = 0.0;
  double v_before = 0.0;
  double v_after = 0.0;

  double drift() const { return v_after - v_before; }
};

struct DriftBin {
  double load_min = 0.0;
  double load_max = 0.0;
  std::size_t count = 0;
  double mean_drift = 0.0;
  // 95% normal-approximation interval for the mean drift.
  double ci_low = 0.0;
  double ci_high = 0.0;
};

struct DriftReport {
  std::vector<DriftBin> bins;  // ascending load; the last bin is the top decile
  const DriftBin& top_decile() const { return bins.back(); }
  // The whole 95% interval of the top bin lies below zero.
  bool top_decile_negative() const { return top_decile().ci_high < 0.0; }
};

inline constexpr std::size_t kMinDriftFrames = 10000;

DriftSample drift_sample(const NetState& before, const NetState& after);

// Sorts frames by pre-frame load (stable, so ties keep frame order) and
// splits them into `bin_count` equal-count bins. Throws std::invalid_argument
// for fewer than `min_frames` samples.
DriftReport drift_diagnostic(std::span<const DriftSample> samples,
                             std::size_t bin_count = 10,
                             std::size_t min_frames = kMinDriftFrames);

}  // namespace mixsched

#endif  // MIXSCHED_DRIFT_H_
