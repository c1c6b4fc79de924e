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

#include "mixsched/traffic.h"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "mixsched/errors.h"

namespace mixsched {

namespace {

constexpr double kPmfTolerance = 1e-9;

std::vector<double> truncated_poisson_pmf(double rate, int support_max) {
  std::vector<double> pmf(support_max + 1);
  double term = 1.0;
  for (int k = 0; k <= support_max; ++k) {
    if (k > 0) term *= rate / k;
    pmf[k] = term;
  }
  const double total = std::accumulate(pmf.begin(), pmf.end(), 0.0);
  for (double& p : pmf) p /= total;
  return pmf;
}

double pmf_mean(const std::vector<double>& pmf) {
  double m = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) m += k * pmf[k];
  return m;
}

}  // namespace

DiscreteDistribution::DiscreteDistribution(std::vector<double> pmf)
    : pmf_(std::move(pmf)) {
  if (pmf_.empty()) throw ModelError("distribution needs a non-empty support");
  double total = 0.0;
  for (double p : pmf_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw ModelError("probabilities must be finite and non-negative");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kPmfTolerance) {
    throw ModelError("probabilities sum to " + std::to_string(total) +
                     ", expected 1");
  }
  cdf_.resize(pmf_.size());
  double running = 0.0;
  for (std::size_t k = 0; k < pmf_.size(); ++k) {
    running += pmf_[k];
    cdf_[k] = running;
    mean_ += k * pmf_[k];
  }
  cdf_.back() = 1.0;
  for (std::size_t k = 0; k < pmf_.size(); ++k) {
    const double dev = k - mean_;
    variance_ += dev * dev * pmf_[k];
  }
}

Count DiscreteDistribution::sample_uniform(double u) const {
  for (std::size_t k = 0; k + 1 < cdf_.size(); ++k) {
    if (u < cdf_[k]) return static_cast<Count>(k);
  }
  return static_cast<Count>(cdf_.size() - 1);
}

Count DiscreteDistribution::sample(RandomStream& rng) const {
  return sample_uniform(rng.uniform());
}

ArrivalModel ArrivalModel::None() {
  return ArrivalModel(ArrivalKind::kNone, DiscreteDistribution({1.0}), 0.0);
}

ArrivalModel ArrivalModel::Bernoulli(double mean) {
  if (!(mean > 0.0 && mean < 1.0)) {
    throw ModelError("bernoulli arrival mean must lie in (0, 1) so that "
                     "Pr(a=0) > 0 and Pr(a=1) > 0; got " +
                     std::to_string(mean));
  }
  return ArrivalModel(ArrivalKind::kBernoulli,
                      DiscreteDistribution({1.0 - mean, mean}), 0.0);
}

ArrivalModel ArrivalModel::TruncatedPoisson(double mean, int support_max) {
  if (support_max < 1) {
    throw ModelError("truncated-poisson support_max must be at least 1");
  }
  if (!(mean > 0.0 && mean < support_max)) {
    throw ModelError("truncated-poisson mean must lie in (0, support_max); got " +
                     std::to_string(mean));
  }
  // The truncated mean is increasing in the underlying rate.
  double lo = 0.0;
  double hi = 1.0;
  while (pmf_mean(truncated_poisson_pmf(hi, support_max)) < mean) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (pmf_mean(truncated_poisson_pmf(mid, support_max)) < mean) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double rate = 0.5 * (lo + hi);
  return ArrivalModel(ArrivalKind::kTruncatedPoisson,
                      DiscreteDistribution(truncated_poisson_pmf(rate, support_max)),
                      rate);
}

ChannelModel ChannelModel::Bernoulli(double mean) {
  if (!(mean > 0.0 && mean <= 1.0)) {
    throw ModelError("bernoulli channel mean must lie in (0, 1]; got " +
                     std::to_string(mean));
  }
  return ChannelModel(ChannelKind::kBernoulli,
                      DiscreteDistribution({1.0 - mean, mean}));
}

ChannelModel ChannelModel::UniformInteger(int max_value) {
  if (max_value < 1) {
    throw ModelError("uniform-integer channel max must be at least 1");
  }
  return ChannelModel(ChannelKind::kUniformInteger,
                      DiscreteDistribution(std::vector<double>(
                          max_value + 1, 1.0 / (max_value + 1))));
}

ChannelModel ChannelModel::Discrete(std::vector<double> pmf) {
  DiscreteDistribution dist(std::move(pmf));
  if (!(dist.mean() > 0.0)) throw ModelError("channel mean must be positive");
  return ChannelModel(ChannelKind::kDiscrete, std::move(dist));
}

UtilitySpec UtilitySpec::ScaledLog(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw ModelError("scaled-log scale must be positive");
  }
  return {UtilityKind::kScaledLog, scale};
}

double utility_value(const UtilitySpec& u, double x) {
  if (u.kind == UtilityKind::kNone) return 0.0;
  if (!(x > 0.0)) throw std::domain_error("utility evaluated at x <= 0");
  return u.kind == UtilityKind::kLog ? std::log(x) : u.scale * std::log(x);
}

double utility_derivative(const UtilitySpec& u, double x) {
  if (u.kind == UtilityKind::kNone) return 0.0;
  if (!(x > 0.0)) throw std::domain_error("utility derivative at x <= 0");
  return u.kind == UtilityKind::kLog ? 1.0 / x : u.scale / x;
}

std::vector<Count> sample_inelastic_arrivals(std::span<const ArrivalModel> models,
                                             std::uint64_t seed,
                                             std::uint64_t frame) {
  std::vector<Count> out(models.size());
  for (std::size_t l = 0; l < models.size(); ++l) {
    RandomStream rng(seed, frame, l, StreamPurpose::kInelasticArrival);
    out[l] = models[l].sample(rng);
  }
  return out;
}

std::vector<Count> sample_channel(std::span<const ChannelModel> models,
                                  std::uint64_t seed, std::uint64_t frame) {
  std::vector<Count> out(models.size());
  for (std::size_t l = 0; l < models.size(); ++l) {
    RandomStream rng(seed, frame, l, StreamPurpose::kChannel);
    out[l] = models[l].sample(rng);
  }
  return out;
}

Count thin_arrivals(Count arrivals, double loss_bound, RandomStream& rng) {
  const double keep = 1.0 - loss_bound;
  Count kept = 0;
  for (Count i = 0; i < arrivals; ++i) {
    if (rng.bernoulli(keep)) ++kept;
  }
  return kept;
}

Count sample_poisson(double mean, RandomStream& rng) {
  if (!(mean > 0.0)) return 0;
  constexpr double kPieceMean = 32.0;
  const int pieces = static_cast<int>(std::ceil(mean / kPieceMean));
  const double piece = mean / pieces;
  const double p0 = std::exp(-piece);
  // Bounds the search when the cdf stalls just below 1 in floating point.
  const Count limit = static_cast<Count>(piece + 40.0 * std::sqrt(piece) + 40.0);
  Count total = 0;
  for (int i = 0; i < pieces; ++i) {
    const double u = rng.uniform();
    Count k = 0;
    double p = p0;
    double cdf = p0;
    while (u >= cdf && k < limit) {
      ++k;
      p *= piece / static_cast<double>(k);
      cdf += p;
    }
    total += k;
  }
  return total;
}

}  // namespace mixsched
