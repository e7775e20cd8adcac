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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tas/selection.hpp"

namespace tas {

void ScenarioSpec::validate() const {
  if (!(horizon_hours > 0.0))
    throw std::invalid_argument("horizon_hours must be > 0");
  if (!(mean_invocations_per_hour > 0.0))
    throw std::invalid_argument("mean_invocations_per_hour must be > 0");
  if (!(drift_sigma >= 0.0) || !(request_drift_sigma >= 0.0))
    throw std::invalid_argument("drift sigmas must be >= 0");
  if (!(refresh_period_hours > 0.0))
    throw std::invalid_argument("refresh_period_hours must be > 0");
  if (retry_depth < 1) throw std::invalid_argument("retry_depth must be >= 1");
  if (!(trigger_tau >= 0.0))
    throw std::invalid_argument("trigger_tau must be >= 0");
  if (window_capacity < 1)
    throw std::invalid_argument("window_capacity must be >= 1");
  workflow.validate();
  requirements.validate();
  auto registry_check = validate_registry(initial_registry, workflow);
  if (!registry_check)
    throw std::invalid_argument("invalid registry: " +
                                registry_check.errors.front());

  double previous = 0.0;
  for (const auto& event : events) {
    if (event.time_hours < previous)
      throw std::invalid_argument("events must be sorted by time");
    if (event.time_hours < 0.0 || event.time_hours > horizon_hours)
      throw std::invalid_argument("event time outside [0, horizon]");
    previous = event.time_hours;
    if (const auto* nst = std::get_if<NewServiceTypeEvent>(&event.kind)) {
      if (nst->services.empty())
        throw std::invalid_argument("NewServiceType event without services");
      if (!(nst->deadline_delta_hours > 0.0))
        throw std::invalid_argument("NewServiceType deadline must be > 0");
    }
  }
}

TrueWorldState init_world(const ScenarioSpec& scenario) {
  scenario.validate();
  TrueWorldState world;
  for (const auto& s : scenario.initial_registry.services)
    world.true_failure_rates[s.key()] = s.advertised_failure_rate;
  world.true_p_vital = scenario.workflow.p_vital;
  world.clock_hours = 0.0;
  return world;
}

void drift(TrueWorldState& world, const ScenarioSpec& scenario,
           RngStream& gen) {
  std::normal_distribution<double> rate_noise(0.0, 1.0);
  if (scenario.drift_sigma > 0.0) {
    for (auto& [key, rate] : world.true_failure_rates)
      rate = std::clamp(rate + scenario.drift_sigma * rate_noise(gen), 0.0,
                        1.0);
  }
  if (scenario.request_drift_sigma > 0.0) {
    world.true_p_vital = std::clamp(
        world.true_p_vital + scenario.request_drift_sigma * rate_noise(gen),
        0.0, 1.0);
  }
}

RequestKind generate_request(const TrueWorldState& world, RngStream& gen) {
  return uniform01(gen) < world.true_p_vital ? RequestKind::Vital
                                             : RequestKind::Emergency;
}

namespace {

// Runs one abstract operation against the hidden rates. Appends a step per
// attempted invocation and returns whether the operation succeeded.
bool run_operation(const TrueWorldState& world, const ServiceRegistry& registry,
                   const Configuration& config, ServiceType type,
                   InvocationOutcome& outcome, RngStream& gen) {
  const auto* ids = config.chain(type);
  if (!ids || ids->empty())
    throw std::invalid_argument("configuration error: no binding for " +
                                to_string(type));
  const bool parallel = config.is_parallel(type);
  bool success = false;
  for (int id : *ids) {
    const ServiceKey key{type, id};
    const auto* service = registry.find(key);
    auto rate = world.true_failure_rates.find(key);
    if (!service || rate == world.true_failure_rates.end())
      throw std::invalid_argument("configuration error: unresolvable service " +
                                  to_string(type) + "/" + std::to_string(id));
    const bool attempt_ok = uniform01(gen) >= rate->second;
    outcome.steps.push_back({type, id, attempt_ok, service->cost});
    outcome.total_cost += service->cost;
    if (attempt_ok) {
      success = true;
      if (!parallel) break;
    }
  }
  return success;
}

}  // namespace

InvocationOutcome execute_workflow(const TrueWorldState& world,
                                   const ServiceRegistry& registry,
                                   const WorkflowSpec& workflow,
                                   const Configuration& config,
                                   RngStream& gen) {
  InvocationOutcome outcome;
  outcome.clock_hours = world.clock_hours;
  outcome.kind = generate_request(world, gen);

  bool alarm_succeeded = false;
  if (outcome.kind == RequestKind::Emergency) {
    alarm_succeeded = run_operation(world, registry, config,
                                    ServiceType::Alarm, outcome, gen);
    outcome.workflow_failed = !alarm_succeeded;
  } else {
    const bool analysis = run_operation(world, registry, config,
                                        ServiceType::MedicalAnalysis, outcome,
                                        gen);
    if (!analysis) {
      outcome.workflow_failed = true;
    } else if (uniform01(gen) < workflow.p_drug) {
      outcome.workflow_failed = !run_operation(world, registry, config,
                                               ServiceType::Drug, outcome, gen);
    } else {
      alarm_succeeded = run_operation(world, registry, config,
                                      ServiceType::Alarm, outcome, gen);
      outcome.workflow_failed = !alarm_succeeded;
    }
  }

  // Relatives are informed after every successful alarm; a notification
  // failure never fails the workflow, but every attempt is billed.
  if (alarm_succeeded && workflow.inform_relatives_enabled &&
      config.chain(ServiceType::InformRelatives))
    run_operation(world, registry, config, ServiceType::InformRelatives,
                  outcome, gen);

  return outcome;
}

TraceLog run_episode(const ScenarioSpec& scenario,
                     AdaptationController& controller) {
  scenario.validate();
  const auto wall_start = std::chrono::steady_clock::now();

  TrueWorldState world = init_world(scenario);
  ServiceRegistry master = scenario.initial_registry;

  RngStream arrivals_gen(derive_seed(scenario.seed, 0xA221));
  RngStream outcomes_gen(derive_seed(scenario.seed, 0x0C07));
  RngStream drift_gen(derive_seed(scenario.seed, 0xD217));

  TraceLog trace;
  trace.scenario = scenario.name;
  trace.seed = scenario.seed;
  controller.bind_trace(trace);

  const double horizon = scenario.horizon_hours;
  const double mean_gap = 1.0 / scenario.mean_invocations_per_hour;
  auto next_arrival_gap = [&]() {
    if (scenario.arrivals == ArrivalMode::Fixed) return mean_gap;
    return std::exponential_distribution<double>(
        scenario.mean_invocations_per_hour)(arrivals_gen);
  };

  controller.on_episode_start(master, 0.0);

  std::size_t event_index = 0;
  double next_hour = 1.0;
  double next_refresh = scenario.refresh_period_hours;
  double next_arrival = next_arrival_gap();

  enum class Step { Scripted, Hour, Refresh, Arrival, Done };
  while (true) {
    double t_scripted = event_index < scenario.events.size()
                            ? scenario.events[event_index].time_hours
                            : std::numeric_limits<double>::infinity();
    // Priority at equal times: scripted event, hour tick, refresh, arrival.
    Step step = Step::Done;
    double t = horizon;
    auto consider = [&](double candidate, Step kind) {
      if (candidate < horizon && candidate < t) {
        t = candidate;
        step = kind;
      }
    };
    consider(next_arrival, Step::Arrival);
    consider(next_refresh, Step::Refresh);
    consider(next_hour, Step::Hour);
    consider(t_scripted, Step::Scripted);
    if (step == Step::Done) break;
    world.clock_hours = t;

    switch (step) {
      case Step::Scripted: {
        const auto& event = scenario.events[event_index++];
        if (const auto* ns = std::get_if<NewServiceEvent>(&event.kind)) {
          master.services.push_back(ns->service);
          world.true_failure_rates[ns->service.key()] =
              ns->service.advertised_failure_rate;
        } else if (const auto* nst =
                       std::get_if<NewServiceTypeEvent>(&event.kind)) {
          for (const auto& s : nst->services) {
            master.services.push_back(s);
            world.true_failure_rates[s.key()] = s.advertised_failure_rate;
          }
          controller.on_new_service_type(*nst, t);
        } else if (const auto* rc =
                       std::get_if<RequirementChangeEvent>(&event.kind)) {
          controller.on_requirement_change(rc->requirements, t);
        } else if (const auto* rs = std::get_if<RateShiftEvent>(&event.kind)) {
          auto it = world.true_failure_rates.find(rs->service);
          if (it == world.true_failure_rates.end())
            throw std::runtime_error("rate-shift event for unknown service");
          it->second = std::clamp(rs->new_failure_rate, 0.0, 1.0);
        }
        break;
      }
      case Step::Hour: {
        drift(world, scenario, drift_gen);
        controller.on_hour_tick(t);
        next_hour += 1.0;
        break;
      }
      case Step::Refresh: {
        // The refresh also updates advertised rates of existing services to
        // the providers' current behavior.
        master.last_refresh_hours = t;
        for (auto& s : master.services)
          s.advertised_failure_rate = world.true_failure_rates.at(s.key());
        trace.refresh_times_hours.push_back(t);
        controller.on_registry_refresh(master, t);
        next_refresh += scenario.refresh_period_hours;
        break;
      }
      case Step::Arrival: {
        InvocationOutcome outcome =
            execute_workflow(world, master, controller.active_workflow(),
                             controller.active_configuration(), outcomes_gen);
        trace.invocations.push_back(outcome);
        controller.on_outcome(outcome);
        next_arrival = t + next_arrival_gap();
        break;
      }
      case Step::Done:
        break;
    }
  }

  trace.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                    wall_start)
          .count();
  return trace;
}

}  // namespace tas
