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

#include "mixsched/simulation.h"

#include <filesystem>
#include <future>
#include <stdexcept>

#include "mixsched/io.h"

namespace mixsched {

namespace {

struct LinkAccumulator {
  Count deficit_sum = 0;
  Count queue_sum = 0;
  Count served_inelastic = 0;
  Count delivered_elastic = 0;
  Count arrivals = 0;
  double admitted_sum = 0.0;
  double utility_sum = 0.0;
};

}  // namespace

double Metrics::total_deficit() const {
  double t = 0.0;
  for (const auto& l : links) t += l.mean_deficit;
  return t;
}

double Metrics::total_queue() const {
  double t = 0.0;
  for (const auto& l : links) t += l.mean_queue;
  return t;
}

double Metrics::objective() const {
  double t = 0.0;
  for (const auto& l : links) t += l.objective;
  return t;
}

double Metrics::drop_probability() const {
  Count arrived = 0;
  Count dropped = 0;
  for (const auto& l : links) {
    arrived += l.inelastic_arrivals;
    dropped += l.inelastic_dropped;
  }
  return arrived == 0 ? 0.0
                      : static_cast<double>(dropped) / static_cast<double>(arrived);
}

Metrics run_simulation(const SimConfig& cfg, const FrameObserver& observer) {
  cfg.validate();
  const std::size_t n = cfg.links.size();
  const Scheduler scheduler(cfg.graph, cfg.scheduler, cfg.enumeration_cap);
  FrameContext ctx;
  ctx.graph = &cfg.graph;
  ctx.links = cfg.links;
  ctx.scheduler = &scheduler;
  ctx.slots = cfg.slots;
  ctx.epsilon = cfg.epsilon;
  ctx.mode = cfg.mode;
  ctx.seed = cfg.seed;

  std::vector<LinkAccumulator> acc(n);
  NetState state(n);
  for (std::uint64_t k = 0; k < cfg.frames; ++k) {
    FrameResult r = run_frame(state, ctx, k);
    const FrameObservation& obs = r.observation;
    for (std::size_t l = 0; l < n; ++l) {
      LinkAccumulator& a = acc[l];
      a.deficit_sum += r.state.deficits[l];
      a.queue_sum += r.state.queues[l];
      a.served_inelastic += obs.served_inelastic[l];
      a.delivered_elastic += obs.delivered_elastic[l];
      a.arrivals += obs.arrivals[l];
      a.admitted_sum += obs.admitted_rate[l];
      if (cfg.links[l].utility.has_elastic_flow()) {
        a.utility_sum += utility_value(cfg.links[l].utility, obs.admitted_rate[l]);
      }
    }
    if (observer) observer(obs, state, r.state);
    state = std::move(r.state);
  }

  Metrics m;
  m.frames = cfg.frames;
  m.links.resize(n);
  const double frames = static_cast<double>(cfg.frames);
  for (std::size_t l = 0; l < n; ++l) {
    const LinkAccumulator& a = acc[l];
    LinkMetrics& out = m.links[l];
    out.mean_deficit = static_cast<double>(a.deficit_sum) / frames;
    out.mean_queue = static_cast<double>(a.queue_sum) / frames;
    out.inelastic_rate = static_cast<double>(a.served_inelastic) / frames;
    out.elastic_rate = static_cast<double>(a.delivered_elastic) / frames;
    out.admitted_rate = a.admitted_sum / frames;
    out.inelastic_arrivals = a.arrivals;
    out.inelastic_dropped = a.arrivals - a.served_inelastic;
    out.drop_probability =
        a.arrivals == 0 ? 0.0
                        : static_cast<double>(out.inelastic_dropped) /
                              static_cast<double>(a.arrivals);
    out.objective = a.utility_sum / frames +
                    cfg.links[l].bonus_weight * out.inelastic_rate;
  }
  return m;
}

Metrics simulate_to_directory(const SimConfig& cfg) {
  std::filesystem::create_directories(cfg.output_dir);
  Metrics m;
  if (cfg.trace) {
    TraceWriter trace(cfg.output_dir / "trace.csv");
    m = run_simulation(cfg, [&](const FrameObservation& obs, const NetState&,
                                const NetState& after) { trace.write(obs, after); });
    trace.close();
  } else {
    m = run_simulation(cfg);
  }
  write_metrics_csv(m, cfg.output_dir / "metrics.csv");
  return m;
}

SchedulerComparison compare_schedulers(const SimConfig& cfg) {
  SimConfig optimal = cfg;
  optimal.scheduler = SchedulerKind::kOptimal;
  SimConfig greedy = cfg;
  greedy.scheduler = SchedulerKind::kGreedy;
  optimal.validate();
  auto greedy_run = std::async(std::launch::async,
                               [greedy] { return run_simulation(greedy); });
  SchedulerComparison out;
  out.optimal = run_simulation(optimal);
  out.greedy = greedy_run.get();
  return out;
}

std::vector<SweepPoint> epsilon_sweep(const SimConfig& cfg,
                                      std::span<const double> epsilons,
                                      std::optional<double> offline_objective) {
  if (epsilons.size() < 2) {
    throw std::invalid_argument("an epsilon sweep needs at least two values");
  }
  std::vector<std::future<Metrics>> runs;
  for (double eps : epsilons) {
    SimConfig c = cfg;
    c.epsilon = eps;
    c.validate();
    runs.push_back(std::async(std::launch::async,
                              [c = std::move(c)] { return run_simulation(c); }));
  }
  std::vector<SweepPoint> out;
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    SweepPoint p;
    p.epsilon = epsilons[i];
    p.metrics = runs[i].get();
    if (offline_objective) p.gap = *offline_objective - p.metrics.objective();
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace mixsched
