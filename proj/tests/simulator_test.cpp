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

#include "tas/simulator.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"

namespace {

using tas::ServiceType;

// Records every callback; adapts nothing.
class RecordingController final : public tas::AdaptationController {
 public:
  RecordingController(tas::WorkflowSpec workflow, tas::Configuration config)
      : workflow_(workflow), config_(std::move(config)) {}

  void on_episode_start(const tas::ServiceRegistry& visible, double) override {
    start_registry_size = visible.services.size();
  }
  void on_outcome(const tas::InvocationOutcome&) override {}
  void on_hour_tick(double clock) override { hour_ticks.push_back(clock); }
  void on_registry_refresh(const tas::ServiceRegistry& visible,
                           double clock) override {
    refreshes.emplace_back(clock, visible.services.size());
    last_visible = visible;
  }
  void on_requirement_change(const tas::RequirementSpec& requirements,
                             double clock) override {
    requirement_changes.emplace_back(clock, requirements.max_failure_prob);
  }
  void on_new_service_type(const tas::NewServiceTypeEvent& event,
                           double clock) override {
    type_events.emplace_back(clock, event.services.size());
  }
  const tas::WorkflowSpec& active_workflow() const override {
    return workflow_;
  }
  const tas::Configuration& active_configuration() const override {
    return config_;
  }

  std::size_t start_registry_size = 0;
  std::vector<double> hour_ticks;
  std::vector<std::pair<double, std::size_t>> refreshes;
  std::vector<std::pair<double, double>> requirement_changes;
  std::vector<std::pair<double, std::size_t>> type_events;
  tas::ServiceRegistry last_visible;

 private:
  tas::WorkflowSpec workflow_;
  tas::Configuration config_;
};

TEST(InitWorld, StartsAtAdvertisedRates) {
  const auto scenario = tas_test::default_scenario();
  const auto world = tas::init_world(scenario);
  EXPECT_EQ(world.true_failure_rates.size(), 15u);
  EXPECT_DOUBLE_EQ(world.true_failure_rates.at({ServiceType::Alarm, 2}), 0.04);
  EXPECT_DOUBLE_EQ(world.true_p_vital, 0.75);
}

TEST(Drift, ClampsAndPerturbs) {
  auto scenario = tas_test::default_scenario();
  scenario.drift_sigma = 10.0;  // forces clamping
  scenario.request_drift_sigma = 10.0;
  auto world = tas::init_world(scenario);
  tas::RngStream gen(3);
  for (int i = 0; i < 50; ++i) {
    tas::drift(world, scenario, gen);
    for (const auto& [key, rate] : world.true_failure_rates) {
      EXPECT_GE(rate, 0.0);
      EXPECT_LE(rate, 1.0);
    }
    EXPECT_GE(world.true_p_vital, 0.0);
    EXPECT_LE(world.true_p_vital, 1.0);
  }
}

TEST(Drift, NoopAtZeroSigma) {
  auto scenario = tas_test::default_scenario();
  scenario.drift_sigma = 0.0;
  scenario.request_drift_sigma = 0.0;
  auto world = tas::init_world(scenario);
  const auto before = world.true_failure_rates;
  tas::RngStream gen(3);
  tas::drift(world, scenario, gen);
  EXPECT_EQ(world.true_failure_rates, before);
}

TEST(ExecuteWorkflow, RetriesInOrderAndCharges) {
  auto scenario = tas_test::default_scenario();
  auto world = tas::init_world(scenario);
  // First alarm alternative always fails, second never does.
  world.true_failure_rates[{ServiceType::Alarm, 3}] = 1.0;
  world.true_failure_rates[{ServiceType::Alarm, 4}] = 0.0;
  world.true_p_vital = 0.0;  // emergency requests only: straight to Alarm

  tas::Configuration config = tas_test::initial_config();
  config.binding[ServiceType::Alarm] = {3, 4};
  tas::RngStream gen(11);
  const auto outcome = tas::execute_workflow(
      world, scenario.initial_registry, scenario.workflow, config, gen);
  ASSERT_EQ(outcome.steps.size(), 2u);
  EXPECT_EQ(outcome.steps[0].service_id, 3);
  EXPECT_FALSE(outcome.steps[0].success);
  EXPECT_EQ(outcome.steps[1].service_id, 4);
  EXPECT_TRUE(outcome.steps[1].success);
  EXPECT_FALSE(outcome.workflow_failed);
  EXPECT_DOUBLE_EQ(outcome.total_cost, 2.0 + 3.0);
}

TEST(ExecuteWorkflow, UnknownServiceThrows) {
  const auto scenario = tas_test::default_scenario();
  const auto world = tas::init_world(scenario);
  tas::Configuration config = tas_test::initial_config();
  config.binding[ServiceType::Drug] = {9};
  tas::RngStream gen(11);
  EXPECT_THROW(tas::execute_workflow(world, scenario.initial_registry,
                                     scenario.workflow, config, gen),
               std::invalid_argument);
}

TEST(RunEpisode, BitIdenticalGivenSeed) {
  const auto scenario = tas_test::default_scenario();
  tas::StaticController c1(scenario.workflow, scenario.initial_config);
  tas::StaticController c2(scenario.workflow, scenario.initial_config);
  const auto a = tas::run_episode(scenario, c1);
  const auto b = tas::run_episode(scenario, c2);
  ASSERT_EQ(a.invocations.size(), b.invocations.size());
  for (std::size_t i = 0; i < a.invocations.size(); ++i) {
    EXPECT_EQ(a.invocations[i].clock_hours, b.invocations[i].clock_hours);
    EXPECT_EQ(a.invocations[i].workflow_failed,
              b.invocations[i].workflow_failed);
    EXPECT_EQ(a.invocations[i].total_cost, b.invocations[i].total_cost);
  }
}

TEST(RunEpisode, ArrivalVolumeNearMean) {
  const auto scenario = tas_test::default_scenario();
  tas::StaticController controller(scenario.workflow,
                                   scenario.initial_config);
  const auto trace = tas::run_episode(scenario, controller);
  const double expected =
      scenario.horizon_hours * scenario.mean_invocations_per_hour;
  EXPECT_NEAR(static_cast<double>(trace.invocations.size()), expected,
              4.0 * std::sqrt(expected));
  for (std::size_t i = 1; i < trace.invocations.size(); ++i)
    EXPECT_GE(trace.invocations[i].clock_hours,
              trace.invocations[i - 1].clock_hours);
  EXPECT_LT(trace.invocations.back().clock_hours, scenario.horizon_hours);
}

TEST(RunEpisode, FixedArrivalsAreRegular) {
  auto scenario = tas_test::default_scenario();
  scenario.arrivals = tas::ArrivalMode::Fixed;
  scenario.mean_invocations_per_hour = 100.0;
  scenario.horizon_hours = 2.0;
  tas::StaticController controller(scenario.workflow,
                                   scenario.initial_config);
  const auto trace = tas::run_episode(scenario, controller);
  EXPECT_NEAR(static_cast<double>(trace.invocations.size()), 200.0, 1.0);
}

TEST(RunEpisode, HourTicksAndRefreshes) {
  const auto scenario = tas_test::default_scenario();
  RecordingController controller(scenario.workflow, scenario.initial_config);
  tas::run_episode(scenario, controller);
  EXPECT_EQ(controller.hour_ticks, (std::vector<double>{1, 2, 3, 4}));
  ASSERT_EQ(controller.refreshes.size(), 4u);
  EXPECT_EQ(controller.refreshes[0].first, 1.0);
}

TEST(RunEpisode, NewServiceVisibleOnlyAfterRefresh) {
  auto scenario = tas_test::default_scenario();
  scenario.events.push_back(
      {1.3, tas::NewServiceEvent{tas::ConcreteService(
                6, ServiceType::Alarm, 0.02, 6.0)}});
  RecordingController controller(scenario.workflow, scenario.initial_config);
  tas::run_episode(scenario, controller);
  ASSERT_EQ(controller.refreshes.size(), 4u);
  EXPECT_EQ(controller.refreshes[0].second, 15u);  // t = 1.0: not yet known
  EXPECT_EQ(controller.refreshes[1].second, 16u);  // t = 2.0: visible
  EXPECT_NE(controller.last_visible.find({ServiceType::Alarm, 6}), nullptr);
}

TEST(RunEpisode, RefreshUpdatesAdvertisedRates) {
  auto scenario = tas_test::default_scenario();
  scenario.drift_sigma = 0.0;
  scenario.events.push_back(
      {0.5, tas::RateShiftEvent{{ServiceType::Alarm, 2}, 0.4}});
  RecordingController controller(scenario.workflow, scenario.initial_config);
  tas::run_episode(scenario, controller);
  const auto* shifted = controller.last_visible.find({ServiceType::Alarm, 2});
  ASSERT_NE(shifted, nullptr);
  EXPECT_DOUBLE_EQ(shifted->advertised_failure_rate, 0.4);
}

TEST(RunEpisode, RequirementAndTypeEventsDelivered) {
  auto scenario = tas_test::default_scenario();
  tas::RequirementSpec relaxed;
  relaxed.max_failure_prob = 0.1;
  scenario.events.push_back({1.5, tas::RequirementChangeEvent{relaxed}});
  tas::NewServiceTypeEvent announce;
  announce.services.emplace_back(1, ServiceType::InformRelatives, 0.05, 2.0);
  announce.deadline_delta_hours = 0.5;
  scenario.events.push_back({2.5, announce});

  RecordingController controller(scenario.workflow, scenario.initial_config);
  tas::run_episode(scenario, controller);
  ASSERT_EQ(controller.requirement_changes.size(), 1u);
  EXPECT_EQ(controller.requirement_changes[0],
            (std::pair<double, double>{1.5, 0.1}));
  ASSERT_EQ(controller.type_events.size(), 1u);
  EXPECT_EQ(controller.type_events[0].first, 2.5);
}

TEST(RunEpisode, InformRelativesFollowsSuccessfulAlarm) {
  auto scenario = tas_test::default_scenario();
  scenario.initial_registry.services.emplace_back(
      1, ServiceType::InformRelatives, 0.05, 2.0);
  scenario.workflow.inform_relatives_enabled = true;
  scenario.initial_config.binding[ServiceType::InformRelatives] = {1};
  scenario.horizon_hours = 1.0;

  tas::StaticController controller(scenario.workflow,
                                   scenario.initial_config);
  const auto trace = tas::run_episode(scenario, controller);
  std::size_t alarm_successes = 0, informs = 0;
  for (const auto& outcome : trace.invocations) {
    for (std::size_t i = 0; i < outcome.steps.size(); ++i) {
      const auto& step = outcome.steps[i];
      if (step.op == ServiceType::Alarm && step.success) {
        ++alarm_successes;
        ASSERT_LT(i + 1, outcome.steps.size());
        EXPECT_EQ(outcome.steps[i + 1].op, ServiceType::InformRelatives);
      }
      if (step.op == ServiceType::InformRelatives) {
        ++informs;
        EXPECT_FALSE(outcome.workflow_failed);
      }
    }
  }
  EXPECT_GT(alarm_successes, 0u);
  EXPECT_EQ(alarm_successes, informs);
}

}  // namespace
