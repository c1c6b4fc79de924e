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


#include "mixsched/config.h"

#include <gtest/gtest.h>

#include <fstream>

#include "fixtures.h"
#include "json.hpp"
#include "mixsched/errors.h"

namespace mixsched {
namespace {

using nlohmann::json;

json two_link_doc() {
  std::ifstream in(fixture::config_path("two_link.cfg"));
  return json::parse(in);
}

std::string expect_config_error(const json& doc) {
  try {
    load_config(doc.dump());
  } catch (const ConfigError& e) {
    return e.path();
  }
  ADD_FAILURE() << "document was accepted: " << doc.dump();
  return {};
}

TEST(LoadConfigTest, ShippedTenLinkConfig) {
  const SimConfig cfg = load_config_file(fixture::config_path("ten_link.cfg"));
  ASSERT_EQ(cfg.graph.link_count(), 10u);
  EXPECT_EQ(cfg.slots, 3);
  EXPECT_DOUBLE_EQ(cfg.epsilon, 0.1);
  EXPECT_EQ(cfg.mode, ChannelMode::kKnown);
  for (const LinkConfig& l : cfg.links) {
    EXPECT_EQ(l.arrivals.kind(), ArrivalKind::kBernoulli);
    EXPECT_DOUBLE_EQ(l.lambda(), 0.6);
    EXPECT_DOUBLE_EQ(l.loss_bound, 0.1);
    EXPECT_DOUBLE_EQ(l.channel.mean(), 0.96);
    EXPECT_EQ(l.utility.kind, UtilityKind::kLog);
  }
  EXPECT_TRUE(cfg.graph.conflicts(0, 1));
  EXPECT_TRUE(cfg.graph.conflicts(0, 3));
  EXPECT_TRUE(cfg.graph.conflicts(0, 6));
  EXPECT_EQ(cfg.graph.neighbors(0).size(), 3u);
}

TEST(LoadConfigTest, ShippedConfigsLoad) {
  for (const char* name : {"two_link.cfg", "two_link_unknown.cfg"}) {
    EXPECT_NO_THROW(load_config_file(fixture::config_path(name))) << name;
  }
  EXPECT_EQ(load_config_file(fixture::config_path("two_link_unknown.cfg")).mode,
            ChannelMode::kUnknown);
}

TEST(LoadConfigTest, LossBoundOfOneRejected) {
  json doc = two_link_doc();
  doc["links"][1]["loss_bound"] = 1.0;
  EXPECT_EQ(expect_config_error(doc), "links[1]");
}

TEST(LoadConfigTest, ConflictOutOfRangeRejected) {
  std::ifstream in(fixture::config_path("ten_link.cfg"));
  json doc = json::parse(in);
  doc["graph"]["conflicts"].push_back({3, 11});
  EXPECT_EQ(expect_config_error(doc).rfind("graph.conflicts[", 0), 0u);
}

TEST(LoadConfigTest, SelfConflictRejected) {
  json doc = two_link_doc();
  doc["graph"]["conflicts"] = {{2, 2}};
  EXPECT_EQ(expect_config_error(doc), "graph.conflicts[0]");
}

TEST(LoadConfigTest, UnknownKeysRejectedAtEveryLevel) {
  json a = two_link_doc();
  a["extra"] = 1;
  EXPECT_EQ(expect_config_error(a), "extra");
  json b = two_link_doc();
  b["links"][0]["channel"]["stddev"] = 1;
  EXPECT_EQ(expect_config_error(b), "links[0].channel.stddev");
  json c = two_link_doc();
  c["sim"]["speed"] = 2;
  EXPECT_EQ(expect_config_error(c), "sim.speed");
}

TEST(LoadConfigTest, MissingAndMistypedFields) {
  json a = two_link_doc();
  a["links"][0].erase("loss_bound");
  EXPECT_EQ(expect_config_error(a), "links[0].loss_bound");
  json b = two_link_doc();
  b["sim"]["slots"] = "three";
  EXPECT_EQ(expect_config_error(b), "sim.slots");
  json c = two_link_doc();
  c.erase("graph");
  EXPECT_EQ(expect_config_error(c), "graph");
  json d = two_link_doc();
  d["links"][0]["arrivals"]["kind"] = "pareto";
  EXPECT_EQ(expect_config_error(d), "links[0].arrivals.kind");
}

TEST(LoadConfigTest, InvariantViolations) {
  json a = two_link_doc();
  a["sim"]["frames"] = 0;
  EXPECT_EQ(expect_config_error(a), "sim.frames");
  json b = two_link_doc();
  b["sim"]["slots"] = 0;
  EXPECT_EQ(expect_config_error(b), "sim.slots");
  json c = two_link_doc();
  c["sim"]["epsilon"] = -0.1;
  EXPECT_EQ(expect_config_error(c), "sim.epsilon");
  json d = two_link_doc();
  d["links"][0]["arrivals"]["mean"] = 1.0;
  EXPECT_EQ(expect_config_error(d), "links[0].arrivals");
  json e = two_link_doc();
  e["links"].erase(1);
  EXPECT_EQ(expect_config_error(e), "links");
  json f = two_link_doc();
  f["links"][1]["id"] = 1;
  EXPECT_FALSE(expect_config_error(f).empty());
}

TEST(LoadConfigTest, UnknownModeNeedsBernoulliChannel) {
  json doc = two_link_doc();
  doc["sim"]["mode"] = "unknown";
  doc["links"][0]["channel"] = {{"kind", "uniform-integer"}, {"max", 2}};
  EXPECT_EQ(expect_config_error(doc), "links[0].channel");
}

TEST(LoadConfigTest, OptimalSchedulerAboveCapRejected) {
  json doc = two_link_doc();
  doc["sim"]["enumeration_cap"] = 1;
  EXPECT_EQ(expect_config_error(doc), "sim.scheduler");
  doc["sim"]["scheduler"] = "greedy";
  EXPECT_NO_THROW(load_config(doc.dump()));
}

TEST(LoadConfigTest, MalformedJsonAndMissingFile) {
  EXPECT_THROW(load_config("{\"graph\": "), ConfigError);
  EXPECT_THROW(load_config_file("/nonexistent/mixsched.cfg"), ConfigError);
}

TEST(LoadConfigTest, OptionalFieldsTakeDefaults) {
  json doc = two_link_doc();
  doc.erase("sim");
  for (auto& l : doc["links"]) {
    l.erase("bonus_weight");
    l.erase("utility");
    l.erase("x_max");
  }
  const SimConfig cfg = load_config(doc.dump());
  EXPECT_EQ(cfg.slots, 3);
  EXPECT_EQ(cfg.frames, 100000u);
  EXPECT_EQ(cfg.links[0].bonus_weight, 0.0);
  EXPECT_EQ(cfg.links[0].utility.kind, UtilityKind::kLog);
  EXPECT_EQ(cfg.links[0].x_max, 10.0);
}

TEST(OfflineProblemTest, CopiesNetwork) {
  const SimConfig cfg = load_config_file(fixture::config_path("two_link_unknown.cfg"));
  const OfflineProblem p = offline_problem(cfg);
  EXPECT_EQ(p.slots, cfg.slots);
  EXPECT_EQ(p.mode, ChannelMode::kUnknown);
  EXPECT_EQ(p.links.size(), 2u);
  EXPECT_EQ(p.graph.conflict_pairs(), cfg.graph.conflict_pairs());
}

}  // namespace
}  // namespace mixsched
