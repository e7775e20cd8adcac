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

#include "tas/polynomial.hpp"

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "tas/exact.hpp"
#include "tas/rng.hpp"

namespace {

using tas::PolynomialFunction;

PolynomialFunction::Universe make_universe() {
  return std::make_shared<const std::vector<std::string>>(
      std::vector<std::string>{"x", "y"});
}

TEST(Polynomial, Algebra) {
  const auto u = make_universe();
  const auto x = PolynomialFunction::variable(u, 0);
  const auto y = PolynomialFunction::variable(u, 1);
  const auto one = PolynomialFunction::constant(u, 1.0);

  const auto p = (one - x) * (one - y) + x * y * 2.0;
  EXPECT_EQ(p.degree(), 2);
  // At (0.5, 0.5): 0.25 + 0.5*0.5*2 = 0.75.
  EXPECT_NEAR(p.evaluate({0.5, 0.5}), 0.75, 1e-15);
  EXPECT_NEAR(p.evaluate({0.0, 0.0}), 1.0, 1e-15);
  EXPECT_NEAR(p.evaluate({1.0, 1.0}), 2.0, 1e-15);
}

TEST(Polynomial, ZeroCoefficientsPruned) {
  const auto u = make_universe();
  const auto x = PolynomialFunction::variable(u, 0);
  const auto zero = x - x;
  EXPECT_EQ(zero.degree(), 0);
  EXPECT_NEAR(zero.evaluate({3.0, 4.0}), 0.0, 1e-15);
  EXPECT_EQ(zero.to_string(), "0");
}

TEST(Polynomial, ToStringStable) {
  const auto u = make_universe();
  const auto x = PolynomialFunction::variable(u, 0);
  const auto one = PolynomialFunction::constant(u, 1.0);
  const auto p = one - x;
  EXPECT_EQ(p.to_string(), (one - x).to_string());
  EXPECT_NE(p.to_string().find("x"), std::string::npos);
}

TEST(Polynomial, MixedUniverseRejected) {
  const auto u1 = make_universe();
  const auto u2 = std::make_shared<const std::vector<std::string>>(
      std::vector<std::string>{"unrelated"});
  const auto a = PolynomialFunction::variable(u1, 0);
  const auto b = PolynomialFunction::variable(u2, 0);
  EXPECT_THROW(a + b, std::invalid_argument);
}

TEST(Parametric, MatchesDirectEvaluationAtRandomPoints) {
  const tas::WorkflowSpec workflow;
  tas::Configuration config;
  config.binding[tas::ServiceType::MedicalAnalysis] = {4, 2};
  config.binding[tas::ServiceType::Alarm] = {2, 4};
  config.binding[tas::ServiceType::Drug] = {1};
  auto params = tas::ModelParams::from_registry(tas_test::default_registry(),
                                                workflow);
  const auto pair = tas::precompute_parametric(workflow, config, params);

  tas::RngStream gen(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    for (auto& [key, rate] : params.failure_rate) rate = unit(gen);
    params.p_vital = unit(gen);
    params.p_drug = unit(gen);
    EXPECT_NEAR(tas::eval_parametric(pair.failure, params),
                tas::eval_failure_probability(workflow, config, params), 1e-9);
    EXPECT_NEAR(tas::eval_parametric(pair.cost, params),
                tas::eval_expected_cost(workflow, config, params), 1e-9);
  }
}

TEST(Parametric, MissingBindingThrows) {
  const tas::WorkflowSpec workflow;
  const auto config = tas_test::initial_config();
  auto params = tas::ModelParams::from_registry(tas_test::default_registry(),
                                                workflow);
  const auto pair = tas::precompute_parametric(workflow, config, params);
  params.failure_rate.erase({tas::ServiceType::Alarm, 2});
  EXPECT_THROW(tas::eval_parametric(pair.failure, params),
               std::invalid_argument);
}

TEST(ParametricEngine, CachesShapes) {
  tas::ParametricExactEngine engine;
  const tas::WorkflowSpec workflow;
  const auto config = tas_test::initial_config();
  const auto params = tas::ModelParams::from_registry(
      tas_test::default_registry(), workflow);
  const auto v1 =
      engine.verify(workflow, config, params, tas::RequirementSpec{});
  EXPECT_NEAR(v1.failure_prob, 0.0765895, 1e-12);
  EXPECT_EQ(engine.cache_size(), 1u);
  const auto v2 =
      engine.verify(workflow, config, params, tas::RequirementSpec{});
  EXPECT_EQ(engine.cache_size(), 1u);
  EXPECT_EQ(v1.failure_prob, v2.failure_prob);
  EXPECT_EQ(v1.method, "rqv-parametric");
}

}  // namespace
