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

#ifndef TAS_SIMULATOR_HPP
#define TAS_SIMULATOR_HPP

#include "tas/rng.hpp"
#include "tas/scenario.hpp"
#include "tas/trace.hpp"

namespace tas {

/// What the adaptation layer is allowed to see and do. The simulator drives
/// this interface; implementations never get access to TrueWorldState.
class AdaptationController {
 public:
  virtual ~AdaptationController() = default;

  /// Lets the controller append verification/adaptation records to the
  /// episode trace. Called once before on_episode_start.
  virtual void bind_trace(TraceLog&) {}

  /// Called once at clock 0 with the first registry snapshot.
  virtual void on_episode_start(const ServiceRegistry& visible,
                                double clock) = 0;
  virtual void on_outcome(const InvocationOutcome& outcome) = 0;
  virtual void on_hour_tick(double clock) = 0;
  virtual void on_registry_refresh(const ServiceRegistry& visible,
                                   double clock) = 0;
  virtual void on_requirement_change(const RequirementSpec& requirements,
                                     double clock) = 0;
  virtual void on_new_service_type(const NewServiceTypeEvent& event,
                                   double clock) = 0;

  virtual const WorkflowSpec& active_workflow() const = 0;
  virtual const Configuration& active_configuration() const = 0;
};

/// A controller that never adapts; useful as a baseline and in tests.
class StaticController final : public AdaptationController {
 public:
  StaticController(WorkflowSpec workflow, Configuration config)
      : workflow_(workflow), config_(std::move(config)) {}

  void on_episode_start(const ServiceRegistry&, double) override {}
  void on_outcome(const InvocationOutcome&) override {}
  void on_hour_tick(double) override {}
  void on_registry_refresh(const ServiceRegistry&, double) override {}
  void on_requirement_change(const RequirementSpec&, double) override {}
  void on_new_service_type(const NewServiceTypeEvent&, double) override {}
  const WorkflowSpec& active_workflow() const override { return workflow_; }
  const Configuration& active_configuration() const override { return config_; }

 private:
  WorkflowSpec workflow_;
  Configuration config_;
};

/// True failure rates start at the advertised profiles; deterministic given
/// the scenario seed.
TrueWorldState init_world(const ScenarioSpec& scenario);

/// Hourly uncertainty injection: every true rate moves by a normal draw and
/// is clamped to [0,1]; the request split is perturbed and re-normalized.
void drift(TrueWorldState& world, const ScenarioSpec& scenario,
           RngStream& gen);

RequestKind generate_request(const TrueWorldState& world, RngStream& gen);

/// Runs one workflow invocation against the hidden world. Costs are charged
/// for every attempted invocation; the workflow fails as soon as one
/// operation exhausts its alternatives (InformRelatives excepted).
/// Throws std::invalid_argument when the configuration references a service
/// the registry does not know (a configuration error, not a failure).
InvocationOutcome execute_workflow(const TrueWorldState& world,
                                   const ServiceRegistry& registry,
                                   const WorkflowSpec& workflow,
                                   const Configuration& config,
                                   RngStream& gen);

/// Runs a full episode: Poisson (or fixed-interval) arrivals, hourly drift,
/// periodic registry refresh, scripted events, and controller callbacks.
/// Bit-deterministic given the scenario (timing metadata aside).
TraceLog run_episode(const ScenarioSpec& scenario,
                     AdaptationController& controller);

}  // namespace tas

#endif  // TAS_SIMULATOR_HPP
