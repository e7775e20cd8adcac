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

#include <benchmark/benchmark.h>

#include "tas/exact.hpp"
#include "tas/rng.hpp"
#include "tas/selection.hpp"
#include "tas/smc.hpp"

namespace {

using tas::ServiceType;

tas::ServiceRegistry registry() {
  tas::ServiceRegistry r;
  auto add = [&r](ServiceType type, int id, double rate, double cost) {
    r.services.emplace_back(id, type, rate, cost);
  };
  add(ServiceType::Alarm, 1, 0.11, 4);
  add(ServiceType::Alarm, 2, 0.04, 12);
  add(ServiceType::Alarm, 3, 0.18, 2);
  add(ServiceType::Alarm, 4, 0.08, 3);
  add(ServiceType::Alarm, 5, 0.14, 5);
  add(ServiceType::MedicalAnalysis, 1, 0.12, 4);
  add(ServiceType::MedicalAnalysis, 2, 0.07, 14);
  add(ServiceType::MedicalAnalysis, 3, 0.18, 2);
  add(ServiceType::MedicalAnalysis, 4, 0.10, 6);
  add(ServiceType::MedicalAnalysis, 5, 0.15, 3);
  add(ServiceType::Drug, 1, 0.01, 5);
  add(ServiceType::Drug, 2, 0.03, 3);
  add(ServiceType::Drug, 3, 0.05, 2);
  add(ServiceType::Drug, 4, 0.07, 1);
  add(ServiceType::Drug, 5, 0.02, 4);
  return r;
}

tas::Configuration depth2_config() {
  tas::Configuration config;
  config.binding[ServiceType::MedicalAnalysis] = {4, 2};
  config.binding[ServiceType::Alarm] = {4, 1};
  config.binding[ServiceType::Drug] = {4, 1};
  return config;
}

void BM_ExactEvaluation(benchmark::State& state) {
  const tas::WorkflowSpec workflow;
  const auto config = depth2_config();
  const auto params = tas::ModelParams::from_registry(registry(), workflow);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        tas::eval_failure_probability(workflow, config, params));
    benchmark::DoNotOptimize(
        tas::eval_expected_cost(workflow, config, params));
  }
}
BENCHMARK(BM_ExactEvaluation);

void BM_ParametricPrecompute(benchmark::State& state) {
  const tas::WorkflowSpec workflow;
  const auto config = depth2_config();
  const auto params = tas::ModelParams::from_registry(registry(), workflow);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        tas::precompute_parametric(workflow, config, params));
}
BENCHMARK(BM_ParametricPrecompute);

void BM_ParametricEvaluate(benchmark::State& state) {
  const tas::WorkflowSpec workflow;
  const auto config = depth2_config();
  const auto params = tas::ModelParams::from_registry(registry(), workflow);
  const auto pair = tas::precompute_parametric(workflow, config, params);
  for (auto _ : state)
    benchmark::DoNotOptimize(tas::eval_parametric(pair.failure, params));
}
BENCHMARK(BM_ParametricEvaluate);

void BM_SimulateWalk(benchmark::State& state) {
  const tas::WorkflowSpec workflow;
  const auto params = tas::ModelParams::from_registry(registry(), workflow);
  const auto model = tas::build_chain(workflow, depth2_config(), params);
  tas::RngStream gen(7);
  for (auto _ : state) benchmark::DoNotOptimize(tas::simulate_walk(model, gen));
}
BENCHMARK(BM_SimulateWalk);

void BM_SmcEstimate(benchmark::State& state) {
  const tas::WorkflowSpec workflow;
  const auto config = depth2_config();
  const auto params = tas::ModelParams::from_registry(registry(), workflow);
  const double eps = 1.0 / static_cast<double>(state.range(0));
  const tas::SmcStrategy strategy{eps, 0.05, 11};
  for (auto _ : state)
    benchmark::DoNotOptimize(tas::estimate(workflow, config, params, strategy));
}
BENCHMARK(BM_SmcEstimate)->Arg(10)->Arg(20);

void BM_EnumerateDepth2(benchmark::State& state) {
  const tas::WorkflowSpec workflow;
  const auto base = registry();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        tas::enumerate_configurations(base, workflow, 2));
}
BENCHMARK(BM_EnumerateDepth2);

}  // namespace

BENCHMARK_MAIN();
