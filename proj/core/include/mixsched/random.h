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

#ifndef MIXSCHED_RANDOM_H_
#define MIXSCHED_RANDOM_H_

#include <cstdint>
#include <limits>

namespace mixsched {

// Every random draw in the simulator belongs to exactly one substream.
enum class StreamPurpose : std::uint64_t {
  kInelasticArrival = 1,
  kChannel = 2,
  kThinning = 3,
  kElasticAdmission = 4,
  kMonteCarlo = 5,
};

std::uint64_t splitmix64(std::uint64_t x);

// Counter-based random stream: the sequence is a pure function of
// (seed, frame, link, purpose), so sample paths do not depend on the order
// in which links or frames are evaluated. Satisfies
// std::uniform_random_bit_generator.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  RandomStream(std::uint64_t seed, std::uint64_t frame, std::uint64_t link,
               StreamPurpose purpose);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform();

  bool bernoulli(double success_probability) {
    return uniform() < success_probability;
  }

 private:
  std::uint64_t state_;
};

}  // namespace mixsched

#endif  // MIXSCHED_RANDOM_H_
