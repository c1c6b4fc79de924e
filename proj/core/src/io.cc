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

#include "mixsched/io.h"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "json.hpp"

namespace mixsched {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

template <typename T>
void append_integer(std::string& s, T v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  s.append(buf, end);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view field, std::string_view what) {
  T v{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw std::runtime_error("malformed " + std::string(what) + " field '" +
                             std::string(field) + "'");
  }
  return v;
}

void expect_header(std::istream& in, std::string_view header) {
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw std::runtime_error("unexpected CSV header: '" + line + "'");
  }
}

void trace_line(std::string& s, const FrameObservation& obs,
                const NetState& after) {
  for (std::size_t l = 0; l < obs.arrivals.size(); ++l) {
    append_integer(s, obs.frame);
    s += ',';
    append_integer(s, l + 1);
    s += ',';
    append_integer(s, obs.arrivals[l]);
    s += ',';
    append_integer(s, obs.thinned[l]);
    s += ',';
    append_integer(s, obs.channel[l]);
    s += ',';
    s += format_double(obs.admitted_rate[l]);
    s += ',';
    append_integer(s, obs.elastic_admissions[l]);
    s += ',';
    append_integer(s, obs.scheduled_inelastic[l]);
    s += ',';
    append_integer(s, obs.scheduled_elastic[l]);
    s += ',';
    append_integer(s, obs.served_inelastic[l]);
    s += ',';
    append_integer(s, obs.served_elastic[l]);
    s += ',';
    append_integer(s, after.deficits[l]);
    s += ',';
    append_integer(s, after.queues[l]);
    s += '\n';
  }
}

void metrics_row(std::ostream& out, std::string_view link, std::uint64_t frames,
                 const LinkMetrics& m) {
  out << link << ',' << frames << ',' << format_double(m.mean_deficit) << ','
      << format_double(m.mean_queue) << ',' << format_double(m.inelastic_rate)
      << ',' << format_double(m.elastic_rate) << ','
      << format_double(m.admitted_rate) << ',' << m.inelastic_arrivals << ','
      << m.inelastic_dropped << ',' << format_double(m.drop_probability) << ','
      << format_double(m.objective) << '\n';
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

TraceWriter::TraceWriter(const std::filesystem::path& path)
    : path_(path), out_(open_output(path)) {
  out_ << kTraceHeader << '\n';
}

void TraceWriter::write(const FrameObservation& obs, const NetState& after) {
  line_.clear();
  trace_line(line_, obs, after);
  out_ << line_;
  if (!out_) throw std::runtime_error("write to " + path_.string() + " failed");
}

void TraceWriter::close() {
  finish(out_, path_);
  out_.close();
}

void write_trace_csv(std::ostream& out, std::span<const FrameResult> frames) {
  out << kTraceHeader << '\n';
  std::string line;
  for (const FrameResult& f : frames) {
    line.clear();
    trace_line(line, f.observation, f.state);
    out << line;
  }
}

void write_trace_csv(std::span<const FrameResult> frames,
                     const std::filesystem::path& path) {
  std::ofstream out = open_output(path);
  write_trace_csv(out, frames);
  finish(out, path);
}

std::vector<TraceRow> read_trace_csv(std::istream& in) {
  expect_header(in, kTraceHeader);
  std::vector<TraceRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 13) throw std::runtime_error("trace row needs 13 fields");
    TraceRow r;
    r.frame = parse_number<std::uint64_t>(f[0], "frame");
    r.link = parse_number<std::size_t>(f[1], "link");
    r.a_i = parse_number<Count>(f[2], "a_i");
    r.thinned_a_i = parse_number<Count>(f[3], "thinned_a_i");
    r.channel = parse_number<Count>(f[4], "channel");
    r.x_star = parse_number<double>(f[5], "x_star");
    r.a_e = parse_number<Count>(f[6], "a_e");
    r.sched_i = parse_number<Count>(f[7], "sched_i");
    r.sched_e = parse_number<Count>(f[8], "sched_e");
    r.served_i = parse_number<Count>(f[9], "served_i");
    r.served_e = parse_number<Count>(f[10], "served_e");
    r.d = parse_number<Count>(f[11], "d");
    r.q = parse_number<Count>(f[12], "q");
    rows.push_back(r);
  }
  return rows;
}

std::vector<TraceRow> read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return read_trace_csv(in);
}

std::vector<DriftSample> drift_samples_from_trace(std::span<const TraceRow> rows) {
  std::vector<DriftSample> out;
  double load_before = 0.0;
  double v_before = 0.0;
  std::size_t i = 0;
  while (i < rows.size()) {
    const std::uint64_t frame = rows[i].frame;
    double load_after = 0.0;
    double v_after = 0.0;
    for (; i < rows.size() && rows[i].frame == frame; ++i) {
      const double d = static_cast<double>(rows[i].d);
      const double q = static_cast<double>(rows[i].q);
      load_after += d + q;
      v_after += 0.5 * (d * d + q * q);
    }
    out.push_back({load_before, v_before, v_after});
    load_before = load_after;
    v_before = v_after;
  }
  return out;
}

void write_metrics_csv(std::ostream& out, const Metrics& m) {
  out << kMetricsHeader << '\n';
  LinkMetrics total;
  for (std::size_t l = 0; l < m.links.size(); ++l) {
    const LinkMetrics& lm = m.links[l];
    metrics_row(out, std::to_string(l + 1), m.frames, lm);
    total.mean_deficit += lm.mean_deficit;
    total.mean_queue += lm.mean_queue;
    total.inelastic_rate += lm.inelastic_rate;
    total.elastic_rate += lm.elastic_rate;
    total.admitted_rate += lm.admitted_rate;
    total.inelastic_arrivals += lm.inelastic_arrivals;
    total.inelastic_dropped += lm.inelastic_dropped;
    total.objective += lm.objective;
  }
  total.drop_probability = m.drop_probability();
  metrics_row(out, "total", m.frames, total);
}

void write_metrics_csv(const Metrics& m, const std::filesystem::path& path) {
  std::ofstream out = open_output(path);
  write_metrics_csv(out, m);
  finish(out, path);
}

Metrics read_metrics_csv(std::istream& in) {
  expect_header(in, kMetricsHeader);
  Metrics m;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 11) throw std::runtime_error("metrics row needs 11 fields");
    if (f[0] == "total") continue;
    const auto link = parse_number<std::size_t>(f[0], "link");
    if (link != m.links.size() + 1) {
      throw std::runtime_error("metrics rows must list links 1..n in order");
    }
    m.frames = parse_number<std::uint64_t>(f[1], "frames");
    LinkMetrics lm;
    lm.mean_deficit = parse_number<double>(f[2], "mean_deficit");
    lm.mean_queue = parse_number<double>(f[3], "mean_queue");
    lm.inelastic_rate = parse_number<double>(f[4], "inelastic_rate");
    lm.elastic_rate = parse_number<double>(f[5], "elastic_rate");
    lm.admitted_rate = parse_number<double>(f[6], "admitted_rate");
    lm.inelastic_arrivals = parse_number<Count>(f[7], "inelastic_arrivals");
    lm.inelastic_dropped = parse_number<Count>(f[8], "inelastic_dropped");
    lm.drop_probability = parse_number<double>(f[9], "drop_probability");
    lm.objective = parse_number<double>(f[10], "objective");
    m.links.push_back(lm);
  }
  return m;
}

Metrics read_metrics_csv(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return read_metrics_csv(in);
}

void write_comparison_csv(const SchedulerComparison& c,
                          const std::filesystem::path& path) {
  std::ofstream out = open_output(path);
  out << "link,optimal_inelastic_rate,greedy_inelastic_rate,"
         "optimal_elastic_rate,greedy_elastic_rate,optimal_drop_probability,"
         "greedy_drop_probability,optimal_mean_deficit,greedy_mean_deficit,"
         "optimal_mean_queue,greedy_mean_queue\n";
  for (std::size_t l = 0; l < c.optimal.links.size(); ++l) {
    const LinkMetrics& o = c.optimal.links[l];
    const LinkMetrics& g = c.greedy.links[l];
    out << l + 1 << ',' << format_double(o.inelastic_rate) << ','
        << format_double(g.inelastic_rate) << ',' << format_double(o.elastic_rate)
        << ',' << format_double(g.elastic_rate) << ','
        << format_double(o.drop_probability) << ','
        << format_double(g.drop_probability) << ','
        << format_double(o.mean_deficit) << ',' << format_double(g.mean_deficit)
        << ',' << format_double(o.mean_queue) << ','
        << format_double(g.mean_queue) << '\n';
  }
  finish(out, path);
}

void write_sweep_csv(std::span<const SweepPoint> points,
                     const std::filesystem::path& path) {
  std::ofstream out = open_output(path);
  out << "epsilon,total_deficit,total_queue,total_load,objective,"
         "drop_probability,gap\n";
  for (const SweepPoint& p : points) {
    out << format_double(p.epsilon) << ','
        << format_double(p.metrics.total_deficit()) << ','
        << format_double(p.metrics.total_queue()) << ','
        << format_double(p.metrics.total_load()) << ','
        << format_double(p.metrics.objective()) << ','
        << format_double(p.metrics.drop_probability()) << ','
        << (p.gap ? format_double(*p.gap) : std::string()) << '\n';
  }
  finish(out, path);
}

void write_drift_csv(const DriftReport& report, const std::filesystem::path& path) {
  std::ofstream out = open_output(path);
  out << "bin,load_min,load_max,count,mean_drift,ci_low,ci_high\n";
  for (std::size_t b = 0; b < report.bins.size(); ++b) {
    const DriftBin& bin = report.bins[b];
    out << b + 1 << ',' << format_double(bin.load_min) << ','
        << format_double(bin.load_max) << ',' << bin.count << ','
        << format_double(bin.mean_drift) << ',' << format_double(bin.ci_low)
        << ',' << format_double(bin.ci_high) << '\n';
  }
  finish(out, path);
}

DualTraceWriter::DualTraceWriter(const std::filesystem::path& path)
    : path_(path), out_(open_output(path)) {
  out_ << "iteration,link,delta_i,delta_e,x,mu_i,mu_e,objective\n";
}

void DualTraceWriter::write(const DualState& state, const IterateRecord& record) {
  for (std::size_t l = 0; l < record.x.size(); ++l) {
    out_ << state.iteration << ',' << l + 1 << ','
         << format_double(state.delta_i[l]) << ','
         << format_double(state.delta_e[l]) << ',' << format_double(record.x[l])
         << ',' << format_double(record.mu_i[l]) << ','
         << format_double(record.mu_e[l]) << ','
         << format_double(record.objective) << '\n';
  }
}

void DualTraceWriter::close() {
  finish(out_, path_);
  out_.close();
}

std::string offline_solution_json(const OfflineSolution& sol,
                                  const OfflineProblem& problem) {
  nlohmann::ordered_json doc;
  doc["objective"] = sol.objective;
  doc["iterations"] = sol.iterations;
  doc["step"] = sol.final_state.step;
  auto& links = doc["links"];
  links = nlohmann::ordered_json::array();
  for (std::size_t l = 0; l < sol.x_star.size(); ++l) {
    nlohmann::ordered_json link;
    link["id"] = l + 1;
    link["x_star"] = sol.x_star[l];
    link["mu_i_star"] = sol.mu_i_star[l];
    link["mu_e_star"] = sol.mu_e_star[l];
    link["required_rate"] = problem.links[l].required_rate();
    link["inelastic_slack"] = sol.inelastic_slack[l];
    link["elastic_slack"] = sol.elastic_slack[l];
    link["delta_i"] = sol.final_state.delta_i[l];
    link["delta_e"] = sol.final_state.delta_e[l];
    links.push_back(std::move(link));
  }
  return doc.dump(2) + "\n";
}

void write_text_file(const std::string& text, const std::filesystem::path& path) {
  std::ofstream out = open_output(path);
  out << text;
  finish(out, path);
}

}  // namespace mixsched
