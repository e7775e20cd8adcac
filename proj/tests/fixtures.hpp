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

#ifndef TAS_TESTS_FIXTURES_HPP
#define TAS_TESTS_FIXTURES_HPP

#include <string>

#include "tas/scenario.hpp"
#include "tas/types.hpp"

namespace tas_test {

// The five-instances-per-type registry used throughout; constructed in code
// so unit tests do not depend on the bundled scenario files.
inline tas::ServiceRegistry default_registry() {
  using tas::ServiceType;
  tas::ServiceRegistry r;
  auto add = [&r](ServiceType t, int id, double fr, double cost) {
    r.services.emplace_back(id, t, fr, cost);
  };
  add(ServiceType::MedicalAnalysis, 1, 0.12, 4.0);
  add(ServiceType::MedicalAnalysis, 2, 0.07, 14.0);
  add(ServiceType::MedicalAnalysis, 3, 0.18, 2.0);
  add(ServiceType::MedicalAnalysis, 4, 0.10, 6.0);
  add(ServiceType::MedicalAnalysis, 5, 0.15, 3.0);
  add(ServiceType::Alarm, 1, 0.11, 4.0);
  add(ServiceType::Alarm, 2, 0.04, 12.0);
  add(ServiceType::Alarm, 3, 0.18, 2.0);
  add(ServiceType::Alarm, 4, 0.08, 3.0);
  add(ServiceType::Alarm, 5, 0.14, 5.0);
  add(ServiceType::Drug, 1, 0.01, 5.0);
  add(ServiceType::Drug, 2, 0.03, 3.0);
  add(ServiceType::Drug, 3, 0.05, 2.0);
  add(ServiceType::Drug, 4, 0.07, 1.0);
  add(ServiceType::Drug, 5, 0.02, 4.0);
  return r;
}

inline tas::Configuration initial_config() {
  tas::Configuration c;
  c.binding[tas::ServiceType::MedicalAnalysis] = {2};
  c.binding[tas::ServiceType::Alarm] = {2};
  c.binding[tas::ServiceType::Drug] = {1};
  return c;
}

inline tas::ScenarioSpec default_scenario() {
  tas::ScenarioSpec s;
  s.name = "tas-default";
  s.seed = 42;
  s.initial_registry = default_registry();
  s.initial_config = initial_config();
  s.drift_sigma = 0.02;
  s.request_drift_sigma = 0.02;
  return s;
}

inline std::string scenario_dir() {
#ifdef TAS_SCENARIO_DIR
  return TAS_SCENARIO_DIR;
#else
  return "scenarios";
#endif
}

}  // namespace tas_test

#endif  // TAS_TESTS_FIXTURES_HPP
