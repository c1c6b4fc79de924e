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

#include "mixsched/network.h"

#include <cmath>
#include <numeric>
#include <string>

#include "mixsched/errors.h"

namespace mixsched {

void LinkConfig::validate() const {
  if (!(loss_bound >= 0.0 && loss_bound < 1.0)) {
    throw ModelError("loss bound must lie in [0, 1); got " +
                     std::to_string(loss_bound));
  }
  if (!(bonus_weight >= 0.0) || !std::isfinite(bonus_weight)) {
    throw ModelError("bonus weight must be finite and non-negative");
  }
  if (!(x_max > 0.0) || !std::isfinite(x_max)) {
    throw ModelError("x_max must be finite and positive");
  }
}

Count NetState::total() const {
  return std::accumulate(deficits.begin(), deficits.end(), Count{0}) +
         std::accumulate(queues.begin(), queues.end(), Count{0});
}

}  // namespace mixsched
