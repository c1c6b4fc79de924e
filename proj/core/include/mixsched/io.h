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

#ifndef MIXSCHED_IO_H_
#define MIXSCHED_IO_H_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mixsched/controller.h"
#include "mixsched/drift.h"
#include "mixsched/dual_solver.h"
#include "mixsched/simulation.h"

namespace mixsched {

// Shortest representation that parses back to the same double.
std::string format_double(double v);

inline constexpr std::string_view kTraceHeader =
    "frame,link,a_i,thinned_a_i,channel,x_star,a_e,sched_i,sched_e,served_i,"
    "served_e,d,q";
inline constexpr std::string_view kMetricsHeader =
    "link,frames,mean_deficit,mean_queue,inelastic_rate,elastic_rate,"
    "admitted_rate,inelastic_arrivals,inelastic_dropped,drop_probability,"
    "objective";

// Streams one row per link per frame. Links are 1-based in the file; d and q
// are the post-frame counters. I/O failures throw std::runtime_error naming
// the path.
class TraceWriter {
 public:
  explicit TraceWriter(const std::filesystem::path& path);
  void write(const FrameObservation& obs, const NetState& after);
  void close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::string line_;
};

void write_trace_csv(std::ostream& out, std::span<const FrameResult> frames);
void write_trace_csv(std::span<const FrameResult> frames,
                     const std::filesystem::path& path);

struct TraceRow {
  std::uint64_t frame = 0;
  std::size_t link = 0;  // 1-based, as in the file
  Count a_i = 0;
  Count thinned_a_i = 0;
  Count channel = 0;
  double x_star = 0.0;
  Count a_e = 0;
  Count sched_i = 0;
  Count sched_e = 0;
  Count served_i = 0;
  Count served_e = 0;
  Count d = 0;
  Count q = 0;
};

std::vector<TraceRow> read_trace_csv(std::istream& in);
std::vector<TraceRow> read_trace_csv(const std::filesystem::path& path);

// Rebuilds per-frame Lyapunov transitions from trace rows; the state before
// frame 0 is zero.
std::vector<DriftSample> drift_samples_from_trace(std::span<const TraceRow> rows);

// One row per link plus a trailing "total" row.
void write_metrics_csv(std::ostream& out, const Metrics& m);
void write_metrics_csv(const Metrics& m, const std::filesystem::path& path);
Metrics read_metrics_csv(std::istream& in);
Metrics read_metrics_csv(const std::filesystem::path& path);

void write_comparison_csv(const SchedulerComparison& c,
                          const std::filesystem::path& path);
void write_sweep_csv(std::span<const SweepPoint> points,
                     const std::filesystem::path& path);
void write_drift_csv(const DriftReport& report, const std::filesystem::path& path);

// Per-iteration multipliers and primal iterates of the offline solver.
class DualTraceWriter {
 public:
  explicit DualTraceWriter(const std::filesystem::path& path);
  void write(const DualState& state, const IterateRecord& record);
  void close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

std::string offline_solution_json(const OfflineSolution& sol,
                                  const OfflineProblem& problem);
void write_text_file(const std::string& text, const std::filesystem::path& path);

}  // namespace mixsched

#endif  // MIXSCHED_IO_H_
