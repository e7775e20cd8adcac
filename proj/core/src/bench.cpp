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

#include "tas/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "tas/exact.hpp"
#include "tas/mape.hpp"
#include "tas/rng.hpp"
#include "tas/simulator.hpp"

namespace tas {

std::unique_ptr<AssuranceEngine> make_engine(const EngineConfig& config) {
  if (config.name == "rqv") return std::make_unique<ExactEngine>();
  if (config.name == "rqv-parametric")
    return std::make_unique<ParametricExactEngine>();
  if (config.name == "rsmc") return std::make_unique<SmcEngine>(config.strategy);
  throw std::invalid_argument("unknown engine: " + config.name);
}

std::uint64_t proxy_micros(const std::string& engine,
                           std::uint64_t evidence_volume) {
  const std::uint64_t rate = engine == "rsmc" ? 25 : 8;
  return (evidence_volume + rate - 1) / rate;
}

FiveNumber five_number(std::vector<double> values) {
  FiveNumber out;
  if (values.empty()) return out;
  std::sort(values.begin(), values.end());
  auto quantile = [&](double q) {
    const double pos = q * (values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - lo;
    return values[lo] * (1.0 - frac) + values[hi] * frac;
  };
  out.min = values.front();
  out.q1 = quantile(0.25);
  out.median = quantile(0.5);
  out.q3 = quantile(0.75);
  out.max = values.back();
  return out;
}

TimelinessStats metric_timeliness(const TraceLog& log) {
  TimelinessStats stats;
  if (log.verifications.empty()) return stats;
  stats.empty = false;
  std::vector<double> walls;
  for (const auto& v : log.verifications) {
    stats.verification_count += v.batch;
    walls.push_back(static_cast<double>(v.wall_micros) /
                    static_cast<double>(v.batch == 0 ? 1 : v.batch));
  }
  stats.verification_wall_micros = five_number(std::move(walls));
  std::vector<double> latencies;
  for (const auto& a : log.adaptations)
    latencies.push_back(static_cast<double>(a.latency_micros));
  stats.adaptation_latency_micros = five_number(std::move(latencies));
  return stats;
}

OverheadStats metric_overhead(const TraceLog& log) {
  OverheadStats stats;
  for (const auto& v : log.verifications) {
    stats.verification_calls += v.batch;
    stats.total_verification_micros += v.wall_micros;
    stats.evidence_volume += v.evidence_volume;
  }
  if (log.wall_seconds > 0.0)
    stats.overhead_fraction =
        (stats.total_verification_micros / 1e6) / log.wall_seconds;
  return stats;
}

ViolationStats metric_violations(const TraceLog& log,
                                 const RequirementSpec& requirements,
                                 int hours) {
  ViolationStats stats;
  if (hours <= 0) {
    double max_clock = 0.0;
    for (const auto& o : log.invocations)
      max_clock = std::max(max_clock, o.clock_hours);
    hours = std::max(1, static_cast<int>(std::ceil(max_clock + 1e-12)));
  }

  std::vector<HourlyRow> rows(hours);
  std::vector<double> cost_sums(hours, 0.0);
  for (int h = 0; h < hours; ++h) rows[h].hour = h + 1;
  auto hour_of = [&](double clock) {
    return std::min(hours - 1, static_cast<int>(clock));
  };
  for (const auto& o : log.invocations) {
    auto& row = rows[hour_of(o.clock_hours)];
    ++row.invocations;
    row.failures += o.workflow_failed ? 1 : 0;
    cost_sums[hour_of(o.clock_hours)] += o.total_cost;
  }
  for (const auto& v : log.verifications) {
    auto& row = rows[hour_of(v.clock_hours)];
    row.verification_calls += v.batch;
    row.evidence_volume += v.evidence_volume;
  }
  for (const auto& a : log.adaptations)
    if (!a.noop) ++rows[hour_of(a.clock_hours)].adaptations;

  for (int h = 0; h < hours; ++h) {
    auto& row = rows[h];
    if (row.invocations > 0) {
      row.failure_fraction =
          static_cast<double>(row.failures) / row.invocations;
      row.mean_cost = cost_sums[h] / row.invocations;
    }
    row.r1_violation = row.failure_fraction > requirements.max_failure_prob;
    row.r2_violation = row.mean_cost > requirements.max_avg_cost;
    stats.r1_violations += row.r1_violation ? 1 : 0;
    stats.r2_violations += row.r2_violation ? 1 : 0;
  }

  if (!log.integrations.empty()) {
    bool all_met = true;
    for (const auto& i : log.integrations)
      all_met = all_met &&
                i.clock_hours <= i.event_time_hours + i.deadline_hours + 1e-12;
    stats.integration_deadlines_met = all_met;
  }
  stats.hours = std::move(rows);
  return stats;
}

namespace {

EpisodeResult run_one(const ScenarioSpec& scenario, const EngineConfig& engine,
                      int repetition) {
  EpisodeResult result;
  result.scenario = scenario.name;
  result.engine = engine.name;
  result.repetition = repetition;
  try {
    ScenarioSpec paired = scenario;
    // Paired seeding: the environment seed depends only on the scenario seed
    // and the repetition index, never on the engine.
    paired.seed = derive_seed(scenario.seed, static_cast<std::uint64_t>(
                                                 repetition));
    auto assurance = make_engine(engine);
    MapeController controller(paired, *assurance);
    result.trace = run_episode(paired, controller);

    const int hours =
        std::max(1, static_cast<int>(std::ceil(scenario.horizon_hours)));
    ViolationStats violations =
        metric_violations(result.trace, scenario.requirements, hours);
    std::ostringstream run_id;
    run_id << scenario.name << "-" << engine.name << "-r" << repetition;
    for (auto& row : violations.hours) {
      row.run_id = run_id.str();
      row.scenario = scenario.name;
      row.engine = engine.name;
      row.repetition = repetition;
      row.verification_wall_micros =
          proxy_micros(engine.name, row.evidence_volume);
      result.rows.push_back(std::move(row));
    }
  } catch (const std::exception& e) {
    result.failed = true;
    result.error = e.what();
  }
  return result;
}

AggregateStats aggregate(const std::string& scenario, const std::string& engine,
                         const std::vector<HourlyRow>& rows) {
  AggregateStats stats;
  stats.scenario = scenario;
  stats.engine = engine;
  std::vector<double> fractions, costs;
  for (const auto& row : rows) {
    if (row.scenario != scenario || row.engine != engine) continue;
    fractions.push_back(row.failure_fraction);
    costs.push_back(row.mean_cost);
    stats.r1_violation_hours += row.r1_violation ? 1 : 0;
    stats.r2_violation_hours += row.r2_violation ? 1 : 0;
  }
  auto mean_sd = [](const std::vector<double>& v, double& mean, double& sd) {
    if (v.empty()) return;
    mean = 0.0;
    for (double x : v) mean += x;
    mean /= v.size();
    double acc = 0.0;
    for (double x : v) acc += (x - mean) * (x - mean);
    sd = v.size() > 1 ? std::sqrt(acc / (v.size() - 1)) : 0.0;
  };
  mean_sd(fractions, stats.mean_failure_fraction,
          stats.stddev_failure_fraction);
  mean_sd(costs, stats.mean_cost_overall, stats.stddev_cost);
  stats.failure_fraction = five_number(std::move(fractions));
  stats.mean_cost = five_number(std::move(costs));
  return stats;
}

}  // namespace

BenchmarkReport run_suite(const std::vector<ScenarioSpec>& suite,
                          const std::vector<EngineConfig>& engines,
                          int repetitions, int workers) {
  if (repetitions < 1)
    throw std::invalid_argument("run_suite: repetitions must be >= 1");
  if (suite.empty() || engines.empty())
    throw std::invalid_argument("run_suite: empty suite or engine list");

  struct Job {
    const ScenarioSpec* scenario;
    const EngineConfig* engine;
    int repetition;
  };
  std::vector<Job> jobs;
  for (const auto& scenario : suite)
    for (const auto& engine : engines)
      for (int rep = 0; rep < repetitions; ++rep)
        jobs.push_back({&scenario, &engine, rep});

  BenchmarkReport report;
  report.repetitions = repetitions;
  report.episodes.resize(jobs.size());

  workers = std::max(1, workers);
  if (workers == 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i)
      report.episodes[i] =
          run_one(*jobs[i].scenario, *jobs[i].engine, jobs[i].repetition);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= jobs.size()) return;
          report.episodes[i] =
              run_one(*jobs[i].scenario, *jobs[i].engine, jobs[i].repetition);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  // Deterministic fold: jobs are already ordered (scenario, engine, rep).
  for (const auto& episode : report.episodes)
    report.rows.insert(report.rows.end(), episode.rows.begin(),
                       episode.rows.end());
  for (const auto& scenario : suite)
    for (const auto& engine : engines)
      report.aggregates.push_back(
          aggregate(scenario.name, engine.name, report.rows));
  return report;
}

ServiceRegistry synthesize_registry(const ServiceRegistry& base,
                                    int instances_per_type,
                                    std::uint64_t seed) {
  if (instances_per_type < 1)
    throw std::invalid_argument("instances_per_type must be >= 1");
  ServiceRegistry out;
  for (ServiceType type : kCoreServiceTypes) {
    const auto pool = base.of_type(type);
    if (pool.empty()) continue;
    for (int i = 0; i < instances_per_type; ++i) {
      const ConcreteService& row = pool[i % pool.size()];
      ConcreteService s = row;
      s.id = i + 1;
      if (i >= static_cast<int>(pool.size())) {
        // Repeated rows get seeded +-10% jitter; the first cycle stays
        // verbatim so the base size reproduces the base registry.
        const std::string tag = to_string(type);
        RngStream gen(derive_seed(seed, fnv1a(tag.data(), tag.size()),
                                  static_cast<std::uint64_t>(i)));
        std::uniform_real_distribution<double> jitter(-0.1, 0.1);
        s.advertised_failure_rate = std::clamp(
            row.advertised_failure_rate * (1.0 + jitter(gen)), 0.0, 1.0);
        s.cost = row.cost * (1.0 + jitter(gen));
      }
      out.services.push_back(s);
    }
  }
  return out;
}

std::vector<ScalePoint> scalability_sweep(
    const ScenarioSpec& base, const std::vector<int>& sizes,
    const std::vector<EngineConfig>& engines) {
  if (!std::is_sorted(sizes.begin(), sizes.end()))
    throw std::invalid_argument("scalability sweep sizes must be ascending");

  std::vector<ScalePoint> points;
  for (int size : sizes) {
    ScenarioSpec scenario = base;
    scenario.initial_registry =
        synthesize_registry(base.initial_registry, size, base.seed);
    for (const auto& engine : engines) {
      auto assurance = make_engine(engine);
      MapeController controller(scenario, *assurance);
      TraceLog trace;
      trace.scenario = scenario.name;
      trace.seed = scenario.seed;
      controller.bind_trace(trace);
      controller.run_cycle(0.0, "scalability");

      ScalePoint point;
      point.size = size;
      point.engine = engine.name;
      for (const auto& a : trace.adaptations)
        point.mean_adaptation_micros += static_cast<double>(a.latency_micros);
      if (!trace.adaptations.empty())
        point.mean_adaptation_micros /= trace.adaptations.size();
      for (const auto& v : trace.verifications)
        point.evidence_volume += v.evidence_volume;
      point.proxy_wall_micros = proxy_micros(engine.name, point.evidence_volume);
      points.push_back(point);
    }
  }
  return points;
}

}  // namespace tas
