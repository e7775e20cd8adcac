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

#ifndef TAS_SCENARIO_HPP
#define TAS_SCENARIO_HPP

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "tas/types.hpp"

namespace tas {

// Scripted environment events (scenarios S1-S4 are expressed with these).
struct NewServiceEvent {
  ConcreteService service;
};
struct NewServiceTypeEvent {
  std::vector<ConcreteService> services;
  double deadline_delta_hours = 0.0;  // integration deadline after the event
};
struct RequirementChangeEvent {
  RequirementSpec requirements;
};
struct RateShiftEvent {
  ServiceKey service;
  double new_failure_rate = 0.0;
};

struct ScenarioEvent {
  double time_hours = 0.0;
  std::variant<NewServiceEvent, NewServiceTypeEvent, RequirementChangeEvent,
               RateShiftEvent>
      kind;
};

enum class ArrivalMode : std::uint8_t { Poisson, Fixed };

/// Full environment script for one episode.
struct ScenarioSpec {
  std::string name = "scenario";
  double horizon_hours = 5.0;
  double mean_invocations_per_hour = 1000.0;
  ArrivalMode arrivals = ArrivalMode::Poisson;
  double drift_sigma = 0.0;          // hourly failure-rate perturbation
  double request_drift_sigma = 0.0;  // hourly request-split perturbation
  double refresh_period_hours = 1.0;  // registry refresh period T
  std::uint64_t seed = 1;
  int retry_depth = 2;

  // MAPE loop knobs (surfaced as configuration; see module docs).
  double trigger_tau = 0.02;
  double trigger_debounce_hours = 0.25;
  int window_capacity = 200;

  ServiceRegistry initial_registry;
  WorkflowSpec workflow;
  RequirementSpec requirements;
  Configuration initial_config;
  std::vector<ScenarioEvent> events;  // sorted by time

  void validate() const;
};

/// Hidden environment state. Engines and the adaptation controller never see
/// this; they observe advertised profiles and invocation outcomes only.
struct TrueWorldState {
  std::map<ServiceKey, double> true_failure_rates;
  double true_p_vital = 0.75;
  double clock_hours = 0.0;
};

enum class RequestKind : std::uint8_t { Vital, Emergency };

struct StepRecord {
  ServiceType op{};
  int service_id = 0;
  bool success = false;
  double cost = 0.0;
};

struct InvocationOutcome {
  double clock_hours = 0.0;
  RequestKind kind = RequestKind::Vital;
  std::vector<StepRecord> steps;
  bool workflow_failed = false;
  double total_cost = 0.0;
};

}  // namespace tas

#endif  // TAS_SCENARIO_HPP
