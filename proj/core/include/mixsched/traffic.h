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

#ifndef MIXSCHED_TRAFFIC_H_
#define MIXSCHED_TRAFFIC_H_

#include <cstdint>
#include <span>
#include <vector>

#include "mixsched/random.h"

namespace mixsched {

using Count = std::int64_t;

// Finite-support distribution over {0, 1, ..., pmf.size()-1}, sampled by
// inversion so that a draw consumes exactly one uniform.
class DiscreteDistribution {
 public:
  DiscreteDistribution() = default;
  explicit DiscreteDistribution(std::vector<double> pmf);

  const std::vector<double>& pmf() const { return pmf_; }
  double probability(Count k) const {
    return k >= 0 && k < static_cast<Count>(pmf_.size()) ? pmf_[k] : 0.0;
  }
  double mean() const { return mean_; }
  double variance() const { return variance_; }
  Count sample(RandomStream& rng) const;
  Count sample_uniform(double u) const;

 private:
  std::vector<double> pmf_;
  std::vector<double> cdf_;
  double mean_ = 0.0;
  double variance_ = 0.0;
};

enum class ArrivalKind { kNone, kBernoulli, kTruncatedPoisson };

// Inelastic arrivals per frame. The stochastic kinds keep Pr(a=0) > 0 and
// Pr(a=1) > 0; `none` models a link with no inelastic flow.
class ArrivalModel {
 public:
  static ArrivalModel None();
  static ArrivalModel Bernoulli(double mean);
  // `mean` is the mean of the truncated law on {0..support_max}.
  static ArrivalModel TruncatedPoisson(double mean, int support_max);

  ArrivalKind kind() const { return kind_; }
  double mean() const { return dist_.mean(); }
  int support_max() const { return static_cast<int>(dist_.pmf().size()) - 1; }
  // Rate of the untruncated Poisson law (truncated-poisson only).
  double poisson_rate() const { return poisson_rate_; }
  const DiscreteDistribution& distribution() const { return dist_; }
  Count sample(RandomStream& rng) const { return dist_.sample(rng); }

 private:
  ArrivalModel(ArrivalKind kind, DiscreteDistribution dist, double rate)
      : kind_(kind), dist_(std::move(dist)), poisson_rate_(rate) {}

  ArrivalKind kind_;
  DiscreteDistribution dist_;
  double poisson_rate_;
};

enum class ChannelKind { kBernoulli, kUniformInteger, kDiscrete };

// Packets per slot a link can carry, drawn once per frame.
class ChannelModel {
 public:
  static ChannelModel Bernoulli(double mean);
  static ChannelModel UniformInteger(int max_value);
  static ChannelModel Discrete(std::vector<double> pmf);

  ChannelKind kind() const { return kind_; }
  // Unknown-channel operation requires a 0/1 channel.
  bool is_bernoulli() const { return kind_ == ChannelKind::kBernoulli; }
  double mean() const { return dist_.mean(); }
  const DiscreteDistribution& distribution() const { return dist_; }
  Count sample(RandomStream& rng) const { return dist_.sample(rng); }

 private:
  ChannelModel(ChannelKind kind, DiscreteDistribution dist)
      : kind_(kind), dist_(std::move(dist)) {}

  ChannelKind kind_;
  DiscreteDistribution dist_;
};

enum class UtilityKind { kNone, kLog, kScaledLog };

// Concave utility of the elastic rate. `none` marks a link with no elastic
// flow: its admitted rate is always zero.
struct UtilitySpec {
  UtilityKind kind = UtilityKind::kLog;
  double scale = 1.0;

  static UtilitySpec None() { return {UtilityKind::kNone, 0.0}; }
  static UtilitySpec Log() { return {UtilityKind::kLog, 1.0}; }
  static UtilitySpec ScaledLog(double scale);

  bool has_elastic_flow() const { return kind != UtilityKind::kNone; }
};

// Throw std::domain_error for x <= 0 (except for `none`, which is 0
// everywhere).
double utility_value(const UtilitySpec& u, double x);
double utility_derivative(const UtilitySpec& u, double x);

std::vector<Count> sample_inelastic_arrivals(std::span<const ArrivalModel> models,
                                             std::uint64_t seed,
                                             std::uint64_t frame);
std::vector<Count> sample_channel(std::span<const ChannelModel> models,
                                  std::uint64_t seed, std::uint64_t frame);

// Binomial(arrivals, 1 - loss_bound) by one coin toss per packet.
Count thin_arrivals(Count arrivals, double loss_bound, RandomStream& rng);

// Poisson(mean) by sequential inversion; means above 32 are split into
// independent pieces to keep exp(-mean) representable.
Count sample_poisson(double mean, RandomStream& rng);

}  // namespace mixsched

#endif  // MIXSCHED_TRAFFIC_H_
