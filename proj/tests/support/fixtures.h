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

// Small builders shared by the unit tests.

#ifndef MIXSCHED_TESTS_SUPPORT_FIXTURES_H_
#define MIXSCHED_TESTS_SUPPORT_FIXTURES_H_

#include <filesystem>
#include <string>
#include <vector>

#include "mixsched/config.h"
#include "mixsched/network.h"

namespace fixture {

inline std::filesystem::path config_path(const std::string& name) {
  return std::filesystem::path(MIXSCHED_CONFIG_DIR) / name;
}

inline mixsched::LinkConfig link(double lambda, double loss, double w,
                                 double channel_mean, bool elastic = true) {
  mixsched::LinkConfig l;
  l.arrivals = lambda > 0.0 ? mixsched::ArrivalModel::Bernoulli(lambda)
                            : mixsched::ArrivalModel::None();
  l.loss_bound = loss;
  l.bonus_weight = w;
  l.channel = mixsched::ChannelModel::Bernoulli(channel_mean);
  l.utility = elastic ? mixsched::UtilitySpec::Log() : mixsched::UtilitySpec::None();
  return l;
}

inline mixsched::SimConfig config(std::size_t n,
                                  std::vector<mixsched::Conflict> conflicts,
                                  std::vector<mixsched::LinkConfig> links, int slots,
                                  std::uint64_t frames) {
  mixsched::SimConfig cfg;
  cfg.graph = mixsched::InterferenceGraph(n, conflicts);
  cfg.links = std::move(links);
  cfg.slots = slots;
  cfg.frames = frames;
  return cfg;
}

// Two mutually conflicting links with identical parameters.
inline mixsched::SimConfig pair(const mixsched::LinkConfig& l, int slots,
                                std::uint64_t frames) {
  return config(2, {{0, 1}}, {l, l}, slots, frames);
}

inline std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("mixsched_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace fixture

#endif  // MIXSCHED_TESTS_SUPPORT_FIXTURES_H_
