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

#include "tas/selection.hpp"

#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"

namespace {

using tas::ServiceType;

TEST(Digest, CanonicalForm) {
  tas::Configuration config = tas_test::initial_config();
  EXPECT_EQ(config.digest(), "A:2|M:2|D:1");
  config.binding[ServiceType::Alarm] = {2, 4};
  config.parallel_ops = {ServiceType::Alarm};
  EXPECT_EQ(config.digest(), "A*:2,4|M:2|D:1");
}

TEST(ValidateRegistry, AcceptsDefault) {
  const auto result =
      tas::validate_registry(tas_test::default_registry(), tas::WorkflowSpec{});
  EXPECT_TRUE(result.ok) << (result.errors.empty() ? "" : result.errors[0]);
}

TEST(ValidateRegistry, RequiresTwoAlarmServices) {
  tas::ServiceRegistry registry = tas_test::default_registry();
  std::erase_if(registry.services, [](const tas::ConcreteService& s) {
    return s.type == ServiceType::Alarm && s.id != 2;
  });
  const auto result = tas::validate_registry(registry, tas::WorkflowSpec{});
  EXPECT_FALSE(result.ok);
}

TEST(ValidateRegistry, RejectsDuplicateIds) {
  tas::ServiceRegistry registry = tas_test::default_registry();
  registry.services.emplace_back(1, ServiceType::Drug, 0.5, 1.0);
  const auto result = tas::validate_registry(registry, tas::WorkflowSpec{});
  EXPECT_FALSE(result.ok);
}

TEST(SelectS1, PicksMinimalFailureRate) {
  const auto alarms =
      tas_test::default_registry().of_type(ServiceType::Alarm);
  EXPECT_EQ(tas::select_s1(alarms), 2);
}

TEST(SelectS1, BreaksTiesByCostThenId) {
  std::vector<tas::ConcreteService> alarms{
      {1, ServiceType::Alarm, 0.05, 9.0},
      {2, ServiceType::Alarm, 0.05, 3.0},
      {3, ServiceType::Alarm, 0.05, 3.0},
  };
  EXPECT_EQ(tas::select_s1(alarms), 2);
}

TEST(SelectS1, ThrowsOnEmpty) {
  EXPECT_THROW(tas::select_s1({}), std::invalid_argument);
}

TEST(SelectS2, DefaultBudget) {
  const auto registry = tas_test::default_registry();
  const auto selection =
      tas::select_s2(registry.of_type(ServiceType::MedicalAnalysis),
                     registry.of_type(ServiceType::Alarm), 0.12);
  ASSERT_TRUE(selection.has_value());
  EXPECT_EQ(selection->medical_id, 2);
  EXPECT_EQ(selection->alarm_id, 2);
  EXPECT_DOUBLE_EQ(selection->cost_sum, 26.0);
}

TEST(SelectS2, LooseBudgetPicksCheapestPair) {
  const auto registry = tas_test::default_registry();
  const auto selection =
      tas::select_s2(registry.of_type(ServiceType::MedicalAnalysis),
                     registry.of_type(ServiceType::Alarm), 1.0);
  ASSERT_TRUE(selection.has_value());
  EXPECT_EQ(selection->medical_id, 3);
  EXPECT_EQ(selection->alarm_id, 3);
  EXPECT_DOUBLE_EQ(selection->cost_sum, 4.0);
}

TEST(SelectS2, InfeasibleBudget) {
  const auto registry = tas_test::default_registry();
  EXPECT_FALSE(tas::select_s2(registry.of_type(ServiceType::MedicalAnalysis),
                              registry.of_type(ServiceType::Alarm), 0.05)
                   .has_value());
}

TEST(EnumerateChains, CountsAndOrder) {
  const auto services =
      tas_test::default_registry().of_type(ServiceType::Alarm);
  const auto depth1 = tas::enumerate_chains(services, 1);
  EXPECT_EQ(depth1.size(), 5u);
  EXPECT_EQ(depth1.front(), std::vector<int>{1});

  const auto depth2 = tas::enumerate_chains(services, 2);
  // 5 singletons + 5*4 ordered pairs.
  EXPECT_EQ(depth2.size(), 25u);
  EXPECT_EQ(depth2[5], (std::vector<int>{1, 2}));
  std::set<std::vector<int>> unique(depth2.begin(), depth2.end());
  EXPECT_EQ(unique.size(), depth2.size());
}

TEST(EnumerateConfigurations, Depth1And2Counts) {
  const auto registry = tas_test::default_registry();
  EXPECT_EQ(
      tas::enumerate_configurations(registry, tas::WorkflowSpec{}, 1).size(),
      125u);
  EXPECT_EQ(
      tas::enumerate_configurations(registry, tas::WorkflowSpec{}, 2).size(),
      15625u);
  EXPECT_EQ(tas::count_configurations(registry, tas::WorkflowSpec{}, 2),
            15625u);
}

TEST(EnumerateConfigurations, MedicalVariesSlowest) {
  const auto registry = tas_test::default_registry();
  const auto configs =
      tas::enumerate_configurations(registry, tas::WorkflowSpec{}, 1);
  EXPECT_EQ(*configs.front().chain(ServiceType::MedicalAnalysis),
            std::vector<int>{1});
  // The first 25 entries keep MedicalAnalysis fixed.
  EXPECT_EQ(*configs[24].chain(ServiceType::MedicalAnalysis),
            std::vector<int>{1});
  EXPECT_EQ(*configs[25].chain(ServiceType::MedicalAnalysis),
            std::vector<int>{2});
}

}  // namespace
