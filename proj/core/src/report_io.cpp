// Copyright 2026 The tas-workbench Authors
//
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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "tas/bench.hpp"

namespace tas {
namespace {

using json = nlohmann::ordered_json;

// Shortest round-trip formatting, identical to the JSON encoder, so CSV and
// JSON artifacts agree byte-for-byte on every platform.
std::string fmt(double value) { return json(value).dump(); }

constexpr char kCsvHeader[] =
    "run_id,scenario,engine,repetition,hour,invocations,failures,"
    "failure_fraction,mean_cost,r1_violation,r2_violation,adaptations,"
    "verification_calls,verification_wall_micros,evidence_volume";

json row_json(const HourlyRow& row) {
  json out;
  out["run_id"] = row.run_id;
  out["scenario"] = row.scenario;
  out["engine"] = row.engine;
  out["repetition"] = row.repetition;
  out["hour"] = row.hour;
  out["invocations"] = row.invocations;
  out["failures"] = row.failures;
  out["failure_fraction"] = row.failure_fraction;
  out["mean_cost"] = row.mean_cost;
  out["r1_violation"] = row.r1_violation;
  out["r2_violation"] = row.r2_violation;
  out["adaptations"] = row.adaptations;
  out["verification_calls"] = row.verification_calls;
  out["verification_wall_micros"] = row.verification_wall_micros;
  out["evidence_volume"] = row.evidence_volume;
  return out;
}

HourlyRow row_from_json(const json& in) {
  HourlyRow row;
  row.run_id = in.at("run_id").get<std::string>();
  row.scenario = in.at("scenario").get<std::string>();
  row.engine = in.at("engine").get<std::string>();
  row.repetition = in.at("repetition").get<int>();
  row.hour = in.at("hour").get<int>();
  row.invocations = in.at("invocations").get<std::uint64_t>();
  row.failures = in.at("failures").get<std::uint64_t>();
  row.failure_fraction = in.at("failure_fraction").get<double>();
  row.mean_cost = in.at("mean_cost").get<double>();
  row.r1_violation = in.at("r1_violation").get<bool>();
  row.r2_violation = in.at("r2_violation").get<bool>();
  row.adaptations = in.at("adaptations").get<std::uint64_t>();
  row.verification_calls = in.at("verification_calls").get<std::uint64_t>();
  row.verification_wall_micros =
      in.at("verification_wall_micros").get<std::uint64_t>();
  row.evidence_volume = in.at("evidence_volume").get<std::uint64_t>();
  return row;
}

json five_json(const FiveNumber& f) {
  json out;
  out["min"] = f.min;
  out["q1"] = f.q1;
  out["median"] = f.median;
  out["q3"] = f.q3;
  out["max"] = f.max;
  return out;
}

FiveNumber five_from_json(const json& in) {
  FiveNumber f;
  f.min = in.at("min").get<double>();
  f.q1 = in.at("q1").get<double>();
  f.median = in.at("median").get<double>();
  f.q3 = in.at("q3").get<double>();
  f.max = in.at("max").get<double>();
  return f;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out.is_open())
    throw std::runtime_error("cannot write " + path.string());
  out << body;
}

struct Scale {
  double lo, hi, pix_lo, pix_hi;
  double operator()(double v) const {
    if (hi == lo) return (pix_lo + pix_hi) / 2.0;
    return pix_lo + (v - lo) / (hi - lo) * (pix_hi - pix_lo);
  }
};

std::string boxplot_svg(const BenchmarkReport& report) {
  std::vector<const AggregateStats*> groups;
  for (const auto& a : report.aggregates) groups.push_back(&a);
  const int width = 160 + static_cast<int>(groups.size()) * 120;
  const int height = 360;

  double hi = 0.0;
  for (const auto* g : groups) hi = std::max(hi, g->failure_fraction.max);
  hi = std::max(hi, 0.025);
  Scale y{0.0, hi * 1.1, height - 50.0, 30.0};

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"20\" y=\"20\" font-size=\"14\">Hourly failure fraction "
         "per engine</text>\n"
      << "<line x1=\"60\" y1=\"" << y(0.0) << "\" x2=\"" << width - 20
      << "\" y2=\"" << y(0.0) << "\" stroke=\"black\"/>\n";
  // Dashed guide at the R1 threshold 0.02.
  svg << "<line x1=\"60\" y1=\"" << y(0.02) << "\" x2=\"" << width - 20
      << "\" y2=\"" << y(0.02)
      << "\" stroke=\"red\" stroke-dasharray=\"4 3\"/>\n"
      << "<text x=\"62\" y=\"" << y(0.02) - 4
      << "\" font-size=\"10\" fill=\"red\">R1 = 0.02</text>\n";

  double x = 120.0;
  for (const auto* g : groups) {
    const FiveNumber& f = g->failure_fraction;
    const double half = 28.0;
    svg << "<line x1=\"" << x << "\" y1=\"" << y(f.min) << "\" x2=\"" << x
        << "\" y2=\"" << y(f.max) << "\" stroke=\"black\"/>\n"
        << "<rect x=\"" << x - half << "\" y=\"" << y(f.q3) << "\" width=\""
        << 2 * half << "\" height=\"" << y(f.q1) - y(f.q3)
        << "\" fill=\"#cfe3ff\" stroke=\"black\"/>\n"
        << "<line x1=\"" << x - half << "\" y1=\"" << y(f.median)
        << "\" x2=\"" << x + half << "\" y2=\"" << y(f.median)
        << "\" stroke=\"black\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << x << "\" y=\"" << height - 30
        << "\" font-size=\"11\" text-anchor=\"middle\">" << g->engine << " ("
        << g->scenario << ")</text>\n";
    x += 120.0;
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string scalability_svg(const BenchmarkReport& report) {
  const int width = 520, height = 360;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"20\" y=\"20\" font-size=\"14\">Adaptation time vs "
         "instances per type</text>\n";
  if (report.scalability.empty()) {
    svg << "<text x=\"20\" y=\"60\" font-size=\"12\">no sweep data</text>\n"
        << "</svg>\n";
    return svg.str();
  }

  double max_size = 0.0, max_time = 0.0;
  for (const auto& p : report.scalability) {
    max_size = std::max(max_size, static_cast<double>(p.size));
    max_time = std::max(max_time, p.mean_adaptation_micros);
  }
  Scale sx{0.0, max_size * 1.1, 60.0, width - 30.0};
  Scale sy{0.0, max_time * 1.1, height - 50.0, 40.0};
  svg << "<line x1=\"60\" y1=\"" << sy(0.0) << "\" x2=\"" << width - 30
      << "\" y2=\"" << sy(0.0) << "\" stroke=\"black\"/>\n"
      << "<line x1=\"60\" y1=\"" << sy(0.0)
      << "\" x2=\"60\" y2=\"40\" stroke=\"black\"/>\n";

  std::map<std::string, std::vector<const ScalePoint*>> series;
  for (const auto& p : report.scalability) series[p.engine].push_back(&p);
  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  int color_index = 0;
  int legend_y = 40;
  for (const auto& [engine, points] : series) {
    const char* color = colors[color_index++ % 4];
    std::ostringstream path;
    for (std::size_t i = 0; i < points.size(); ++i)
      path << (i == 0 ? "M" : "L") << sx(points[i]->size) << " "
           << sy(points[i]->mean_adaptation_micros) << " ";
    svg << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    for (const auto* p : points)
      svg << "<circle cx=\"" << sx(p->size) << "\" cy=\""
          << sy(p->mean_adaptation_micros) << "\" r=\"3\" fill=\"" << color
          << "\"/>\n";
    svg << "<text x=\"" << width - 150 << "\" y=\"" << legend_y
        << "\" font-size=\"11\" fill=\"" << color << "\">" << engine
        << "</text>\n";
    legend_y += 16;
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string comparison_text(const BenchmarkReport& report) {
  std::map<std::string, const AggregateStats*> by_engine;
  for (const auto& a : report.aggregates)
    if (!by_engine.count(a.engine)) by_engine[a.engine] = &a;

  std::ostringstream out;
  out << "Benchmark criteria comparison (exact evaluation vs statistical "
         "model checking)\n";
  out << std::string(78, '-') << "\n";
  auto row = [&out](const std::string& criterion, const std::string& left,
                    const std::string& right) {
    out << criterion << "\n  rqv:  " << left << "\n  rsmc: " << right << "\n\n";
  };

  auto fraction = [&](const char* engine) -> std::string {
    auto it = by_engine.find(engine);
    if (it == by_engine.end()) return "not run";
    std::ostringstream s;
    s << "mean hourly failure fraction " << fmt(it->second->mean_failure_fraction)
      << ", R1 violation hours " << it->second->r1_violation_hours
      << ", R2 violation hours " << it->second->r2_violation_hours;
    return s.str();
  };

  row("Handling of inaccurate knowledge",
      "failure-rate point estimates fed into an exact model; inaccuracy "
      "bounded by the estimation window",
      "same estimates plus sampling error bounded a priori by (E, A)");
  row("Trade-off between competing criteria (R1 vs R2)",
      fraction("rqv"), fraction("rsmc"));

  std::uint64_t volume_rqv = 0, volume_rsmc = 0;
  for (const auto& r : report.rows) {
    if (r.engine == "rsmc")
      volume_rsmc += r.evidence_volume;
    else
      volume_rqv += r.evidence_volume;
  }
  row("Evidence basis",
      "exhaustive model evaluation; volume (model states) = " +
          std::to_string(volume_rqv),
      "simulation samples; volume (samples) = " + std::to_string(volume_rsmc));

  auto timeliness = [&](bool rsmc) -> std::string {
    std::uint64_t proxy = 0;
    for (const auto& r : report.rows)
      if ((r.engine == "rsmc") == rsmc) proxy += r.verification_wall_micros;
    return "verification time proxy (micros, deterministic cost model) = " +
           std::to_string(proxy);
  };
  row("Timeliness", timeliness(false), timeliness(true));

  if (!report.scalability.empty()) {
    out << "Scalability sweep (mean adaptation micros, measured)\n";
    for (const auto& p : report.scalability)
      out << "  size " << p.size << "  " << p.engine << "  "
          << fmt(p.mean_adaptation_micros) << "\n";
  }
  return out.str();
}

}  // namespace

std::string report_csv(const BenchmarkReport& report) {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  for (const auto& row : report.rows) {
    out << row.run_id << "," << row.scenario << "," << row.engine << ","
        << row.repetition << "," << row.hour << "," << row.invocations << ","
        << row.failures << "," << fmt(row.failure_fraction) << ","
        << fmt(row.mean_cost) << "," << (row.r1_violation ? 1 : 0) << ","
        << (row.r2_violation ? 1 : 0) << "," << row.adaptations << ","
        << row.verification_calls << "," << row.verification_wall_micros << ","
        << row.evidence_volume << "\n";
  }
  return out.str();
}

void emit_report(const BenchmarkReport& report, const std::string& directory) {
  const std::filesystem::path dir(directory);
  std::filesystem::create_directories(dir);

  json root;
  root["repetitions"] = report.repetitions;
  json rows = json::array();
  for (const auto& row : report.rows) rows.push_back(row_json(row));
  root["rows"] = std::move(rows);
  json aggregates = json::array();
  for (const auto& a : report.aggregates) {
    json entry;
    entry["scenario"] = a.scenario;
    entry["engine"] = a.engine;
    entry["failure_fraction"] = five_json(a.failure_fraction);
    entry["mean_cost"] = five_json(a.mean_cost);
    entry["mean_failure_fraction"] = a.mean_failure_fraction;
    entry["stddev_failure_fraction"] = a.stddev_failure_fraction;
    entry["mean_cost_overall"] = a.mean_cost_overall;
    entry["stddev_cost"] = a.stddev_cost;
    entry["r1_violation_hours"] = a.r1_violation_hours;
    entry["r2_violation_hours"] = a.r2_violation_hours;
    aggregates.push_back(std::move(entry));
  }
  root["aggregates"] = std::move(aggregates);
  json scalability = json::array();
  for (const auto& p : report.scalability) {
    json entry;
    entry["size"] = p.size;
    entry["engine"] = p.engine;
    entry["mean_adaptation_micros"] = p.mean_adaptation_micros;
    entry["evidence_volume"] = p.evidence_volume;
    entry["proxy_wall_micros"] = p.proxy_wall_micros;
    scalability.push_back(std::move(entry));
  }
  root["scalability"] = std::move(scalability);
  json failures = json::array();
  for (const auto& e : report.episodes)
    if (e.failed) {
      json entry;
      entry["scenario"] = e.scenario;
      entry["engine"] = e.engine;
      entry["repetition"] = e.repetition;
      entry["error"] = e.error;
      failures.push_back(std::move(entry));
    }
  root["failed_episodes"] = std::move(failures);

  write_file(dir / "report.json", root.dump(2) + "\n");
  write_file(dir / "report.csv", report_csv(report));
  write_file(dir / "failure_boxplot.svg", boxplot_svg(report));
  write_file(dir / "scalability.svg", scalability_svg(report));
  write_file(dir / "comparison.txt", comparison_text(report));
}

BenchmarkReport load_report(const std::string& json_path) {
  std::ifstream in(json_path);
  if (!in.is_open())
    throw std::runtime_error("cannot open report: " + json_path);
  json root = json::parse(in);

  BenchmarkReport report;
  report.repetitions = root.at("repetitions").get<int>();
  for (const auto& row : root.at("rows"))
    report.rows.push_back(row_from_json(row));
  for (const auto& entry : root.at("aggregates")) {
    AggregateStats a;
    a.scenario = entry.at("scenario").get<std::string>();
    a.engine = entry.at("engine").get<std::string>();
    a.failure_fraction = five_from_json(entry.at("failure_fraction"));
    a.mean_cost = five_from_json(entry.at("mean_cost"));
    a.mean_failure_fraction = entry.at("mean_failure_fraction").get<double>();
    a.stddev_failure_fraction =
        entry.at("stddev_failure_fraction").get<double>();
    a.mean_cost_overall = entry.at("mean_cost_overall").get<double>();
    a.stddev_cost = entry.at("stddev_cost").get<double>();
    a.r1_violation_hours = entry.at("r1_violation_hours").get<int>();
    a.r2_violation_hours = entry.at("r2_violation_hours").get<int>();
    report.aggregates.push_back(std::move(a));
  }
  for (const auto& entry : root.at("scalability")) {
    ScalePoint p;
    p.size = entry.at("size").get<int>();
    p.engine = entry.at("engine").get<std::string>();
    p.mean_adaptation_micros = entry.at("mean_adaptation_micros").get<double>();
    p.evidence_volume = entry.at("evidence_volume").get<std::uint64_t>();
    p.proxy_wall_micros = entry.at("proxy_wall_micros").get<std::uint64_t>();
    report.scalability.push_back(std::move(p));
  }
  return report;
}

}  // namespace tas
