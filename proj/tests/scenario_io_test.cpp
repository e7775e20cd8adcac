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

#include "tas/scenario_io.hpp"

#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace {

using tas::ServiceType;

std::string default_path() {
  return tas_test::scenario_dir() + "/tas-default.json";
}

TEST(ParseScenario, BundledDefaultMatchesTables) {
  const auto scenario = tas::parse_scenario(default_path());
  EXPECT_EQ(scenario.name, "tas-default");
  EXPECT_EQ(scenario.initial_registry.services.size(), 15u);

  const auto* alarm2 = scenario.initial_registry.find({ServiceType::Alarm, 2});
  ASSERT_NE(alarm2, nullptr);
  EXPECT_DOUBLE_EQ(alarm2->advertised_failure_rate, 0.04);
  EXPECT_DOUBLE_EQ(alarm2->cost, 12.0);
  const auto* medical5 =
      scenario.initial_registry.find({ServiceType::MedicalAnalysis, 5});
  ASSERT_NE(medical5, nullptr);
  EXPECT_DOUBLE_EQ(medical5->advertised_failure_rate, 0.15);
  EXPECT_DOUBLE_EQ(medical5->cost, 3.0);

  EXPECT_DOUBLE_EQ(scenario.workflow.p_vital, 0.75);
  EXPECT_DOUBLE_EQ(scenario.workflow.p_drug, 0.66);
  EXPECT_DOUBLE_EQ(scenario.requirements.max_failure_prob, 0.02);
  EXPECT_DOUBLE_EQ(scenario.requirements.max_avg_cost, 8.0);
  EXPECT_EQ(scenario.initial_config.digest(), "A:2|M:2|D:1");
  EXPECT_EQ(scenario.retry_depth, 2);
}

TEST(ParseScenario, RoundTripIsByteStable) {
  const auto scenario = tas::parse_scenario(default_path());
  const auto once = tas::serialize_scenario(scenario);
  const auto twice = tas::serialize_scenario(tas::parse_scenario_text(once));
  EXPECT_EQ(once, twice);
}

TEST(ParseScenario, EventScenariosRoundTrip) {
  for (const char* name : {"tas-s2.json", "tas-s3.json", "tas-s4.json"}) {
    const auto scenario =
        tas::parse_scenario(tas_test::scenario_dir() + "/" + name);
    const auto once = tas::serialize_scenario(scenario);
    EXPECT_EQ(once, tas::serialize_scenario(tas::parse_scenario_text(once)))
        << name;
  }
  const auto s2 = tas::parse_scenario(tas_test::scenario_dir() + "/tas-s2.json");
  ASSERT_TRUE(s2.requirements.pair_budget_x.has_value());
  EXPECT_DOUBLE_EQ(*s2.requirements.pair_budget_x, 0.12);
}

TEST(ParseScenario, UnknownFieldRejected) {
  auto scenario = tas::parse_scenario(default_path());
  auto text = tas::serialize_scenario(scenario);
  text.insert(text.find("\"name\""), "\"surprise\": 1,\n  ");
  EXPECT_THROW(tas::parse_scenario_text(text), tas::ScenarioParseError);
}

TEST(ParseScenario, NegativeCostNamesField) {
  auto text = tas::serialize_scenario(tas::parse_scenario(default_path()));
  const auto pos = text.find("\"cost\": 12");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 10, "\"cost\": -12");
  try {
    tas::parse_scenario_text(text);
    FAIL() << "expected ScenarioParseError";
  } catch (const tas::ScenarioParseError& e) {
    EXPECT_NE(std::string(e.what()).find("cost"), std::string::npos);
  }
}

TEST(ParseScenario, MalformedJsonRejected) {
  EXPECT_THROW(tas::parse_scenario_text("{ not json"),
               tas::ScenarioParseError);
  EXPECT_THROW(tas::parse_scenario_text("{}"), tas::ScenarioParseError);
}

TEST(ParseScenario, BadSplitRejected) {
  auto text = tas::serialize_scenario(tas::parse_scenario(default_path()));
  const auto pos = text.find("\"p_vital\": 0.75");
  ASSERT_NE(pos, std::string::npos);
  auto broken = text;
  broken.replace(pos, 15, "\"p_vital\": 0.80");
  EXPECT_THROW(tas::parse_scenario_text(broken), tas::ScenarioParseError);
}

TEST(ParseSuite, LoadsReferencedScenarios) {
  const auto suite =
      tas::parse_suite(tas_test::scenario_dir() + "/suite-default.json");
  ASSERT_EQ(suite.size(), 3u);
  EXPECT_EQ(suite[0].name, "tas-default");
  EXPECT_EQ(suite[1].name, "tas-s3");
  EXPECT_EQ(suite[2].name, "tas-s4");
  EXPECT_FALSE(suite[2].events.empty());
}

}  // namespace
