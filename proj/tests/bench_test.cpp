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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"

namespace {

using tas::ServiceType;

tas::ScenarioSpec small_scenario() {
  auto scenario = tas_test::default_scenario();
  scenario.horizon_hours = 2.0;
  scenario.mean_invocations_per_hour = 200.0;
  return scenario;
}

TEST(FiveNumber, QuartilesWithInterpolation) {
  const auto f = tas::five_number({4.0, 1.0, 3.0, 2.0});
  EXPECT_DOUBLE_EQ(f.min, 1.0);
  EXPECT_DOUBLE_EQ(f.q1, 1.75);
  EXPECT_DOUBLE_EQ(f.median, 2.5);
  EXPECT_DOUBLE_EQ(f.q3, 3.25);
  EXPECT_DOUBLE_EQ(f.max, 4.0);
}

TEST(ProxyMicros, FixedRatesPerEngine) {
  EXPECT_EQ(tas::proxy_micros("rqv", 16), 2u);
  EXPECT_EQ(tas::proxy_micros("rqv", 17), 3u);  // ceiling division
  EXPECT_EQ(tas::proxy_micros("rsmc", 50), 2u);
  EXPECT_EQ(tas::proxy_micros("rqv-parametric", 16), 2u);
}

TEST(MetricViolations, ThresholdArithmetic) {
  tas::TraceLog log;
  for (int i = 0; i < 1000; ++i) {
    tas::InvocationOutcome o;
    o.clock_hours = 0.5;
    o.workflow_failed = i < 30;
    o.total_cost = 5.0;
    log.invocations.push_back(o);
  }
  const auto stats = tas::metric_violations(log, tas::RequirementSpec{}, 1);
  ASSERT_EQ(stats.hours.size(), 1u);
  EXPECT_EQ(stats.hours[0].invocations, 1000u);
  EXPECT_DOUBLE_EQ(stats.hours[0].failure_fraction, 0.03);
  EXPECT_TRUE(stats.hours[0].r1_violation);
  EXPECT_FALSE(stats.hours[0].r2_violation);
  EXPECT_EQ(stats.r1_violations, 1);
}

TEST(MetricViolations, AllSuccessesNoViolations) {
  tas::TraceLog log;
  for (int i = 0; i < 100; ++i) {
    tas::InvocationOutcome o;
    o.clock_hours = 0.1;
    o.total_cost = 3.0;
    log.invocations.push_back(o);
  }
  const auto stats = tas::metric_violations(log, tas::RequirementSpec{}, 1);
  EXPECT_EQ(stats.r1_violations, 0);
  EXPECT_EQ(stats.r2_violations, 0);
  EXPECT_FALSE(stats.integration_deadlines_met.has_value());
}

TEST(MetricTimeliness, EmptyLogFlagged) {
  EXPECT_TRUE(tas::metric_timeliness(tas::TraceLog{}).empty);
}

TEST(MetricOverhead, ZeroWithoutVerifications) {
  EXPECT_DOUBLE_EQ(tas::metric_overhead(tas::TraceLog{}).overhead_fraction,
                   0.0);
}

TEST(MetricOverhead, SampleAccounting) {
  tas::TraceLog log;
  tas::VerificationRecord v{};
  v.batch = 10;
  v.evidence_volume = 7380;  // 10 candidates at N = 738
  v.wall_micros = 100;
  log.verifications.push_back(v);
  const auto stats = tas::metric_overhead(log);
  EXPECT_EQ(stats.verification_calls, 10u);
  EXPECT_EQ(stats.evidence_volume, 7380u);
}

TEST(RunSuite, CountsAndPairedSeeds) {
  const auto scenario = small_scenario();
  const std::vector<tas::EngineConfig> engines{
      {"rqv", {}}, {"rsmc", {0.1, 0.1, 1}}};
  const auto report = tas::run_suite({scenario}, engines, 3);
  EXPECT_EQ(report.episodes.size(), 6u);
  EXPECT_EQ(report.rows.size(), 12u);  // 6 episodes x 2 hours

  // Paired seeding: both engines face the identical arrival sequence.
  for (int rep = 0; rep < 3; ++rep) {
    const auto& rqv = report.episodes[rep];
    const auto& rsmc = report.episodes[3 + rep];
    ASSERT_EQ(rqv.engine, "rqv");
    ASSERT_EQ(rsmc.engine, "rsmc");
    ASSERT_EQ(rqv.repetition, rsmc.repetition);
    ASSERT_EQ(rqv.trace.invocations.size(), rsmc.trace.invocations.size());
    for (std::size_t i = 0; i < rqv.trace.invocations.size(); ++i)
      EXPECT_EQ(rqv.trace.invocations[i].clock_hours,
                rsmc.trace.invocations[i].clock_hours);
  }

  // Distinct environment seeds across repetitions.
  EXPECT_NE(report.episodes[0].trace.seed, report.episodes[1].trace.seed);
}

TEST(RunSuite, DeterministicReport) {
  const auto scenario = small_scenario();
  const std::vector<tas::EngineConfig> engines{{"rqv", {}}};
  const auto a = tas::run_suite({scenario}, engines, 2);
  const auto b = tas::run_suite({scenario}, engines, 2);
  EXPECT_EQ(tas::report_csv(a), tas::report_csv(b));
}

TEST(RunSuite, EpisodeFailureRecordedSuiteContinues) {
  auto bad = small_scenario();
  bad.name = "bad";
  // Fails episode validation; the initial MAPE cycle would repair a merely
  // broken binding before the workflow ever invokes it.
  bad.mean_invocations_per_hour = -5.0;
  const auto good = small_scenario();
  const auto report =
      tas::run_suite({bad, good}, {{"rqv", {}}}, 1);
  ASSERT_EQ(report.episodes.size(), 2u);
  EXPECT_TRUE(report.episodes[0].failed);
  EXPECT_FALSE(report.episodes[0].error.empty());
  EXPECT_FALSE(report.episodes[1].failed);
}

TEST(SynthesizeRegistry, BaseSizeVerbatim) {
  const auto base = tas_test::default_registry();
  const auto synthesized = tas::synthesize_registry(base, 5, 42);
  ASSERT_EQ(synthesized.services.size(), base.services.size());
  for (ServiceType type : tas::kCoreServiceTypes) {
    const auto original = base.of_type(type);
    const auto copy = synthesized.of_type(type);
    ASSERT_EQ(copy.size(), original.size());
    for (std::size_t i = 0; i < copy.size(); ++i) {
      EXPECT_EQ(copy[i].advertised_failure_rate,
                original[i].advertised_failure_rate);
      EXPECT_EQ(copy[i].cost, original[i].cost);
    }
  }
}

TEST(SynthesizeRegistry, LargerSizesJitterWithinBounds) {
  const auto base = tas_test::default_registry();
  const auto synthesized = tas::synthesize_registry(base, 12, 42);
  EXPECT_EQ(synthesized.services.size(), 36u);
  const auto alarms = synthesized.of_type(ServiceType::Alarm);
  const auto base_alarms = base.of_type(ServiceType::Alarm);
  for (std::size_t i = 5; i < alarms.size(); ++i) {
    const auto& row = base_alarms[i % 5];
    EXPECT_NEAR(alarms[i].advertised_failure_rate,
                row.advertised_failure_rate,
                0.1 * row.advertised_failure_rate + 1e-12);
    EXPECT_NEAR(alarms[i].cost, row.cost, 0.1 * row.cost + 1e-12);
  }
  // Deterministic in the seed.
  const auto again = tas::synthesize_registry(base, 12, 42);
  for (std::size_t i = 0; i < synthesized.services.size(); ++i)
    EXPECT_EQ(synthesized.services[i].advertised_failure_rate,
              again.services[i].advertised_failure_rate);
}

TEST(EmitReport, ArtifactsWrittenAndReloadable) {
  const auto scenario = small_scenario();
  auto report = tas::run_suite({scenario}, {{"rqv", {}}}, 2);
  const auto dir =
      std::filesystem::temp_directory_path() / "tas-bench-test-out";
  std::filesystem::remove_all(dir);
  tas::emit_report(report, dir.string());
  for (const char* name : {"report.csv", "report.json", "failure_boxplot.svg",
                           "scalability.svg", "comparison.txt"})
    EXPECT_TRUE(std::filesystem::exists(dir / name)) << name;

  // CSV row count = episodes x hours, plus the header.
  std::ifstream csv(dir / "report.csv");
  std::string line;
  int lines = 0;
  while (std::getline(csv, line)) ++lines;
  EXPECT_EQ(lines, 1 + 2 * 2);

  const auto reloaded = tas::load_report((dir / "report.json").string());
  EXPECT_EQ(tas::report_csv(reloaded), tas::report_csv(report));
  std::filesystem::remove_all(dir);
}

}  // namespace
