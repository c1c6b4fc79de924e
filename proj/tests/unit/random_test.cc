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


#include "mixsched/random.h"

#include <gtest/gtest.h>

#include <set>

namespace mixsched {
namespace {

TEST(RandomStreamTest, SameKeyGivesSameSequence) {
  RandomStream a(7, 3, 2, StreamPurpose::kChannel);
  RandomStream b(7, 3, 2, StreamPurpose::kChannel);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
}

TEST(RandomStreamTest, KeyComponentsSelectDistinctStreams) {
  std::set<std::uint64_t> first;
  first.insert(RandomStream(7, 3, 2, StreamPurpose::kChannel)());
  first.insert(RandomStream(8, 3, 2, StreamPurpose::kChannel)());
  first.insert(RandomStream(7, 4, 2, StreamPurpose::kChannel)());
  first.insert(RandomStream(7, 3, 1, StreamPurpose::kChannel)());
  first.insert(RandomStream(7, 3, 2, StreamPurpose::kThinning)());
  EXPECT_EQ(first.size(), 5u);
}

TEST(RandomStreamTest, UniformStaysInUnitInterval) {
  RandomStream r(1, 0, 0, StreamPurpose::kMonteCarlo);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 0.005);
}

TEST(RandomStreamTest, BernoulliEdgeProbabilities) {
  RandomStream r(1, 0, 0, StreamPurpose::kMonteCarlo);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_FALSE(r.bernoulli(0.0));
    EXPECT_TRUE(r.bernoulli(1.0));
  }
}

TEST(SplitMixTest, KnownValue) {
  // First output of the reference SplitMix64 generator seeded with 0.
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
}

}  // namespace
}  // namespace mixsched
