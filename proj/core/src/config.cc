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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>

#include "json.hpp"

#include "mixsched/errors.h"

namespace mixsched {

namespace {

using nlohmann::json;

// A JSON value together with its path in the document.
class Field {
 public:
  Field(const json& value, std::string path)
      : value_(&value), path_(std::move(path)) {}

  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& message) const {
    throw ConfigError(path_.empty() ? "<document>" : path_, message);
  }

  void expect_object(std::initializer_list<std::string_view> allowed) const {
    if (!value_->is_object()) fail("expected an object");
    for (const auto& [key, _] : value_->items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        throw ConfigError(child_path(key), "unknown key");
      }
    }
  }

  std::optional<Field> find(std::string_view key) const {
    auto it = value_->find(std::string(key));
    if (it == value_->end()) return std::nullopt;
    return Field(*it, child_path(key));
  }

  Field at(std::string_view key) const {
    auto f = find(key);
    if (!f) throw ConfigError(child_path(key), "missing required key");
    return *f;
  }

  std::vector<Field> elements() const {
    if (!value_->is_array()) fail("expected an array");
    std::vector<Field> out;
    for (std::size_t i = 0; i < value_->size(); ++i) {
      out.emplace_back((*value_)[i], path_ + "[" + std::to_string(i) + "]");
    }
    return out;
  }

  double number() const {
    if (!value_->is_number()) fail("expected a number");
    const double v = value_->get<double>();
    if (!std::isfinite(v)) fail("expected a finite number");
    return v;
  }

  std::int64_t integer() const {
    if (!value_->is_number_integer()) fail("expected an integer");
    return value_->get<std::int64_t>();
  }

  std::uint64_t unsigned_integer() const {
    const std::int64_t v = integer();
    if (v < 0) fail("expected a non-negative integer");
    return static_cast<std::uint64_t>(v);
  }

  std::string text() const {
    if (!value_->is_string()) fail("expected a string");
    return value_->get<std::string>();
  }

  bool boolean() const {
    if (!value_->is_boolean()) fail("expected a boolean");
    return value_->get<bool>();
  }

 private:
  std::string child_path(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  const json* value_;
  std::string path_;
};

// Rethrows model invariant violations against the field that built them.
template <typename F>
auto build(const Field& f, F&& make) {
  try {
    return make();
  } catch (const ModelError& e) {
    f.fail(e.what());
  }
}

ArrivalModel parse_arrivals(const Field& f) {
  const std::string kind = f.at("kind").text();
  if (kind == "none") {
    f.expect_object({"kind"});
    return ArrivalModel::None();
  }
  if (kind == "bernoulli") {
    f.expect_object({"kind", "mean"});
    const double mean = f.at("mean").number();
    return build(f, [&] { return ArrivalModel::Bernoulli(mean); });
  }
  if (kind == "truncated-poisson") {
    f.expect_object({"kind", "mean", "support_max"});
    const double mean = f.at("mean").number();
    const auto cap = f.at("support_max").integer();
    return build(f, [&] {
      return ArrivalModel::TruncatedPoisson(mean, static_cast<int>(cap));
    });
  }
  f.at("kind").fail("unknown arrival kind '" + kind +
                    "' (expected none, bernoulli or truncated-poisson)");
}

ChannelModel parse_channel(const Field& f) {
  const std::string kind = f.at("kind").text();
  if (kind == "bernoulli") {
    f.expect_object({"kind", "mean"});
    const double mean = f.at("mean").number();
    return build(f, [&] { return ChannelModel::Bernoulli(mean); });
  }
  if (kind == "uniform-integer") {
    f.expect_object({"kind", "max"});
    const auto max = f.at("max").integer();
    return build(f, [&] {
      return ChannelModel::UniformInteger(static_cast<int>(max));
    });
  }
  if (kind == "discrete") {
    f.expect_object({"kind", "pmf"});
    std::vector<double> pmf;
    for (const Field& p : f.at("pmf").elements()) pmf.push_back(p.number());
    return build(f, [&] { return ChannelModel::Discrete(pmf); });
  }
  f.at("kind").fail("unknown channel kind '" + kind +
                    "' (expected bernoulli, uniform-integer or discrete)");
}

UtilitySpec parse_utility(const Field& f) {
  const std::string kind = f.at("kind").text();
  if (kind == "none") {
    f.expect_object({"kind"});
    return UtilitySpec::None();
  }
  if (kind == "log") {
    f.expect_object({"kind"});
    return UtilitySpec::Log();
  }
  if (kind == "scaled-log") {
    f.expect_object({"kind", "scale"});
    const double scale = f.at("scale").number();
    return build(f, [&] { return UtilitySpec::ScaledLog(scale); });
  }
  f.at("kind").fail("unknown utility kind '" + kind +
                    "' (expected none, log or scaled-log)");
}

LinkConfig parse_link(const Field& f) {
  f.expect_object({"id", "arrivals", "loss_bound", "bonus_weight", "channel",
                   "utility", "x_max"});
  LinkConfig link;
  link.arrivals = parse_arrivals(f.at("arrivals"));
  link.channel = parse_channel(f.at("channel"));
  link.loss_bound = f.at("loss_bound").number();
  if (auto w = f.find("bonus_weight")) link.bonus_weight = w->number();
  if (auto u = f.find("utility")) link.utility = parse_utility(*u);
  if (auto x = f.find("x_max")) link.x_max = x->number();
  build(f, [&] {
    link.validate();
    return 0;
  });
  return link;
}

}  // namespace

void SimConfig::validate() const {
  if (links.size() != graph.link_count()) {
    throw ConfigError("links", "expected " + std::to_string(graph.link_count()) +
                                   " link entries, found " +
                                   std::to_string(links.size()));
  }
  for (std::size_t l = 0; l < links.size(); ++l) {
    const std::string path = "links[" + std::to_string(l) + "]";
    try {
      links[l].validate();
    } catch (const ModelError& e) {
      throw ConfigError(path, e.what());
    }
    if (mode == ChannelMode::kUnknown && !links[l].channel.is_bernoulli()) {
      throw ConfigError(path + ".channel",
                        "unknown-channel mode requires a bernoulli channel");
    }
  }
  if (slots < 1) throw ConfigError("sim.slots", "must be at least 1");
  if (!(epsilon > 0.0)) throw ConfigError("sim.epsilon", "must be positive");
  if (frames < 1) throw ConfigError("sim.frames", "must be at least 1");
  if (scheduler == SchedulerKind::kOptimal &&
      graph.link_count() > enumeration_cap) {
    throw ConfigError("sim.scheduler",
                      "optimal scheduler refused: " +
                          std::to_string(graph.link_count()) +
                          " links exceed the enumeration cap of " +
                          std::to_string(enumeration_cap) + "; use greedy");
  }
}

SimConfig load_config(std::string_view document) {
  json root;
  try {
    root = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", std::string("malformed JSON: ") + e.what());
  }
  const Field doc(root, "");
  doc.expect_object({"graph", "links", "sim"});

  SimConfig cfg;

  const Field graph = doc.at("graph");
  graph.expect_object({"links", "conflicts"});
  std::vector<std::int64_t> ids;
  for (const Field& id : graph.at("links").elements()) ids.push_back(id.integer());
  const std::size_t n = ids.size();
  if (n == 0) graph.at("links").fail("at least one link is required");
  {
    std::vector<std::int64_t> sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n; ++i) {
      if (sorted[i] != static_cast<std::int64_t>(i + 1)) {
        graph.at("links").fail("link ids must be exactly 1.." + std::to_string(n));
      }
    }
  }
  std::vector<Conflict> conflicts;
  if (auto list = graph.find("conflicts")) {
    for (const Field& pair : list->elements()) {
      const auto ends = pair.elements();
      if (ends.size() != 2) pair.fail("a conflict is a pair of link ids");
      const std::int64_t a = ends[0].integer();
      const std::int64_t b = ends[1].integer();
      const std::string text =
          "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
      if (a < 1 || b < 1 || a > static_cast<std::int64_t>(n) ||
          b > static_cast<std::int64_t>(n)) {
        pair.fail("conflict " + text + " references a link outside [1, " +
                  std::to_string(n) + "]");
      }
      if (a == b) pair.fail("self-conflict " + text);
      conflicts.emplace_back(static_cast<LinkId>(a - 1), static_cast<LinkId>(b - 1));
    }
  }
  cfg.graph = InterferenceGraph(n, conflicts);

  std::vector<std::optional<LinkConfig>> links(n);
  for (const Field& entry : doc.at("links").elements()) {
    const Field id_field = entry.at("id");
    const std::int64_t id = id_field.integer();
    if (id < 1 || id > static_cast<std::int64_t>(n)) {
      id_field.fail("link id " + std::to_string(id) + " is not in the graph");
    }
    if (links[id - 1]) id_field.fail("duplicate link id " + std::to_string(id));
    links[id - 1] = parse_link(entry);
  }
  for (std::size_t l = 0; l < n; ++l) {
    if (!links[l]) {
      throw ConfigError("links", "no entry for link " + std::to_string(l + 1));
    }
    cfg.links.push_back(*links[l]);
  }

  if (auto sim = doc.find("sim")) {
    sim->expect_object({"slots", "epsilon", "mode", "scheduler", "frames", "seed",
                        "output_dir", "trace", "enumeration_cap"});
    if (auto f = sim->find("slots")) {
      const auto v = f->integer();
      if (v < 1 || v > 64) f->fail("slots must lie in [1, 64]");
      cfg.slots = static_cast<int>(v);
    }
    if (auto f = sim->find("epsilon")) {
      cfg.epsilon = f->number();
      if (!(cfg.epsilon > 0.0)) f->fail("epsilon must be positive");
    }
    if (auto f = sim->find("mode")) {
      const std::string m = f->text();
      if (m == "known") {
        cfg.mode = ChannelMode::kKnown;
      } else if (m == "unknown") {
        cfg.mode = ChannelMode::kUnknown;
      } else {
        f->fail("mode must be 'known' or 'unknown'");
      }
    }
    if (auto f = sim->find("scheduler")) {
      const std::string s = f->text();
      if (s == "optimal") {
        cfg.scheduler = SchedulerKind::kOptimal;
      } else if (s == "greedy") {
        cfg.scheduler = SchedulerKind::kGreedy;
      } else {
        f->fail("scheduler must be 'optimal' or 'greedy'");
      }
    }
    if (auto f = sim->find("frames")) {
      cfg.frames = f->unsigned_integer();
      if (cfg.frames < 1) f->fail("frames must be at least 1");
    }
    if (auto f = sim->find("seed")) cfg.seed = f->unsigned_integer();
    if (auto f = sim->find("output_dir")) cfg.output_dir = f->text();
    if (auto f = sim->find("trace")) cfg.trace = f->boolean();
    if (auto f = sim->find("enumeration_cap")) {
      cfg.enumeration_cap = static_cast<std::size_t>(f->unsigned_integer());
    }
  }
  cfg.validate();
  return cfg;
}

SimConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string(), "cannot open configuration file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_config(buffer.str());
}

OfflineProblem offline_problem(const SimConfig& cfg) {
  return OfflineProblem{cfg.graph, cfg.links, cfg.slots, cfg.mode};
}

std::string_view to_string(ChannelMode mode) {
  return mode == ChannelMode::kKnown ? "known" : "unknown";
}

std::string_view to_string(SchedulerKind kind) {
  return kind == SchedulerKind::kOptimal ? "optimal" : "greedy";
}

}  // namespace mixsched
