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

#include "tas/exact.hpp"

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "tas/selection.hpp"

namespace {

using tas::ServiceType;

tas::ModelParams default_params() {
  return tas::ModelParams::from_registry(tas_test::default_registry(),
                                         tas::WorkflowSpec{});
}

TEST(Exact, HandCheckedInitialConfig) {
  const tas::WorkflowSpec workflow;
  const auto config = tas_test::initial_config();
  const auto params = default_params();
  EXPECT_NEAR(tas::eval_failure_probability(workflow, config, params),
              0.0765895, 1e-12);
  EXPECT_NEAR(tas::eval_expected_cost(workflow, config, params), 18.64755,
              1e-12);
}

TEST(Exact, ZeroFailureRatesGiveBranchWeightedCost) {
  const tas::WorkflowSpec workflow;
  const auto config = tas_test::initial_config();
  auto params = default_params();
  for (auto& [key, rate] : params.failure_rate) rate = 0.0;
  EXPECT_NEAR(tas::eval_failure_probability(workflow, config, params), 0.0,
              1e-15);
  // 14*0.75 + 5*0.75*0.66 + 12*(0.25 + 0.75*0.34)
  EXPECT_NEAR(tas::eval_expected_cost(workflow, config, params), 19.035, 1e-12);
}

TEST(Exact, CompliantDepth2Config) {
  const tas::WorkflowSpec workflow;
  tas::Configuration config;
  config.binding[ServiceType::MedicalAnalysis] = {4, 2};
  config.binding[ServiceType::Alarm] = {4, 1};
  config.binding[ServiceType::Drug] = {4, 1};
  const auto params = default_params();
  EXPECT_NEAR(tas::eval_failure_probability(workflow, config, params),
              0.0100223665, 1e-12);
  EXPECT_NEAR(tas::eval_expected_cost(workflow, config, params), 7.88424605,
              1e-7);
  const auto verdict =
      tas::verdict_exact(workflow, config, params, tas::RequirementSpec{});
  EXPECT_EQ(verdict.compliant, tas::Compliance::Compliant);
}

TEST(Exact, MatchesOracleOnDepth1Space) {
  const tas::WorkflowSpec workflow;
  const auto params = default_params();
  for (const auto& config : tas::enumerate_configurations(
           tas_test::default_registry(), workflow, 1)) {
    const auto oracle = tas_oracle::evaluate(workflow, config, params);
    EXPECT_NEAR(tas::eval_failure_probability(workflow, config, params),
                oracle.failure_prob, 1e-12)
        << config.digest();
    EXPECT_NEAR(tas::eval_expected_cost(workflow, config, params),
                oracle.expected_cost, 1e-12)
        << config.digest();
  }
}

TEST(Exact, MatchesOracleWithParallelAlarm) {
  tas::WorkflowSpec workflow;
  tas::Configuration config = tas_test::initial_config();
  config.binding[ServiceType::Alarm] = {2, 4};
  config.parallel_ops = {ServiceType::Alarm};
  const auto params = default_params();
  const auto oracle = tas_oracle::evaluate(workflow, config, params);
  EXPECT_NEAR(tas::eval_failure_probability(workflow, config, params),
              oracle.failure_prob, 1e-12);
  EXPECT_NEAR(tas::eval_expected_cost(workflow, config, params),
              oracle.expected_cost, 1e-12);
}

TEST(Exact, MatchesOracleWithInformRelatives) {
  tas::WorkflowSpec workflow;
  workflow.inform_relatives_enabled = true;
  tas::Configuration config = tas_test::initial_config();
  config.binding[ServiceType::InformRelatives] = {1};
  auto params = default_params();
  params.failure_rate[{ServiceType::InformRelatives, 1}] = 0.05;
  params.cost[{ServiceType::InformRelatives, 1}] = 2.0;

  const auto oracle = tas_oracle::evaluate(workflow, config, params);
  const double p = tas::eval_failure_probability(workflow, config, params);
  EXPECT_NEAR(p, oracle.failure_prob, 1e-12);
  EXPECT_NEAR(tas::eval_expected_cost(workflow, config, params),
              oracle.expected_cost, 1e-12);
  // InformRelatives never fails the workflow: failure probability equals the
  // inform-disabled value.
  tas::WorkflowSpec without = workflow;
  without.inform_relatives_enabled = false;
  EXPECT_NEAR(p, tas::eval_failure_probability(without, config, params),
              1e-15);
}

TEST(Exact, ModelShapeDepth1) {
  const auto model = tas::build_chain(tas::WorkflowSpec{},
                                      tas_test::initial_config(),
                                      default_params(), /*labeled=*/true);
  // 2 absorbing + 5 transient states at depth 1.
  EXPECT_EQ(model.states.size(), 7u);
  const auto text = tas::export_transition_list(model);
  EXPECT_NE(text.find("# entry"), std::string::npos);
  EXPECT_NE(text.find("# state 0"), std::string::npos);
}

TEST(Exact, TransitionsPointDownward) {
  tas::Configuration config;
  config.binding[ServiceType::MedicalAnalysis] = {4, 2};
  config.binding[ServiceType::Alarm] = {2, 4};
  config.binding[ServiceType::Drug] = {1, 5};
  const auto model =
      tas::build_chain(tas::WorkflowSpec{}, config, default_params());
  for (std::size_t s = 2; s < model.states.size(); ++s) {
    double total = 0.0;
    for (std::int32_t e = 0; e < model.states[s].n_edges; ++e) {
      EXPECT_LT(model.states[s].edges[e].to, static_cast<std::int32_t>(s));
      total += model.states[s].edges[e].prob;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(ExactEngine, VerdictThresholds) {
  tas::ExactEngine engine;
  const auto verdict =
      engine.verify(tas::WorkflowSpec{}, tas_test::initial_config(),
                    default_params(), tas::RequirementSpec{});
  EXPECT_EQ(verdict.compliant, tas::Compliance::Violating);
  EXPECT_EQ(verdict.method, "rqv");
  EXPECT_GT(verdict.evidence_volume, 0u);
}

TEST(ExactEngine, MissingBindingThrows) {
  tas::ExactEngine engine;
  tas::Configuration config;
  config.binding[ServiceType::MedicalAnalysis] = {2};
  EXPECT_THROW(engine.verify(tas::WorkflowSpec{}, config, default_params(),
                             tas::RequirementSpec{}),
               std::invalid_argument);
}

}  // namespace
