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

#ifndef MIXSCHED_CONFIG_H_
#define MIXSCHED_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mixsched/dual_solver.h"
#include "mixsched/network.h"
#include "mixsched/topology.h"

namespace mixsched {

struct SimConfig {
  InterferenceGraph graph{1, {}};
  std::vector<LinkConfig> links;
  int slots = 3;
  double epsilon = 0.1;
  ChannelMode mode = ChannelMode::kKnown;
  SchedulerKind scheduler = SchedulerKind::kOptimal;
  std::uint64_t frames = 100000;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = "out";
  bool trace = false;
  std::size_t enumeration_cap = kDefaultEnumerationCap;

  // Throws ConfigError.
  void validate() const;
};

// Parses and validates a JSON configuration document with top-level keys
// "graph", "links" and "sim". Link ids are 1-based in the document. Unknown
// keys are rejected. Throws ConfigError carrying the offending field path.
SimConfig load_config(std::string_view document);
SimConfig load_config_file(const std::filesystem::path& path);

OfflineProblem offline_problem(const SimConfig& cfg);

std::string_view to_string(ChannelMode mode);
std::string_view to_string(SchedulerKind kind);

}  // namespace mixsched

#endif  // MIXSCHED_CONFIG_H_
