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

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tas/selection.hpp"

namespace tas {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& context, const std::string& what) {
  throw ScenarioParseError(context + ": " + what);
}

void check_keys(const json& object, const std::set<std::string>& allowed,
                const std::string& context) {
  if (!object.is_object()) fail(context, "expected an object");
  for (const auto& [key, value] : object.items())
    if (!allowed.count(key)) fail(context, "unknown field \"" + key + "\"");
}

const json& require(const json& object, const std::string& key,
                    const std::string& context) {
  auto it = object.find(key);
  if (it == object.end()) fail(context, "missing field \"" + key + "\"");
  return *it;
}

double as_number(const json& value, const std::string& context) {
  if (!value.is_number()) fail(context, "expected a number");
  return value.get<double>();
}

int as_int(const json& value, const std::string& context) {
  if (!value.is_number_integer()) fail(context, "expected an integer");
  return value.get<int>();
}

std::string as_string(const json& value, const std::string& context) {
  if (!value.is_string()) fail(context, "expected a string");
  return value.get<std::string>();
}

ServiceType parse_type(const json& value, const std::string& context) {
  const std::string name = as_string(value, context);
  if (name == "alarm") return ServiceType::Alarm;
  if (name == "medical_analysis") return ServiceType::MedicalAnalysis;
  if (name == "drug") return ServiceType::Drug;
  if (name == "inform_relatives") return ServiceType::InformRelatives;
  fail(context, "unknown service type \"" + name + "\"");
}

std::string type_name(ServiceType t) {
  switch (t) {
    case ServiceType::Alarm:
      return "alarm";
    case ServiceType::MedicalAnalysis:
      return "medical_analysis";
    case ServiceType::Drug:
      return "drug";
    case ServiceType::InformRelatives:
      return "inform_relatives";
  }
  throw std::logic_error("bad service type");
}

ConcreteService parse_service(const json& object, const std::string& context) {
  check_keys(object, {"type", "id", "failure_rate", "cost"}, context);
  try {
    return ConcreteService(
        as_int(require(object, "id", context), context + ".id"),
        parse_type(require(object, "type", context), context + ".type"),
        as_number(require(object, "failure_rate", context),
                  context + ".failure_rate"),
        as_number(require(object, "cost", context), context + ".cost"));
  } catch (const std::invalid_argument& e) {
    fail(context, e.what());
  }
}

json service_json(const ConcreteService& s) {
  json out;
  out["type"] = type_name(s.type);
  out["id"] = s.id;
  out["failure_rate"] = s.advertised_failure_rate;
  out["cost"] = s.cost;
  return out;
}

WorkflowSpec parse_workflow(const json& object, const std::string& context) {
  check_keys(object,
             {"p_vital", "p_emergency", "p_drug", "p_alarm",
              "inform_relatives_enabled"},
             context);
  WorkflowSpec workflow;
  workflow.p_vital =
      as_number(require(object, "p_vital", context), context + ".p_vital");
  workflow.p_emergency = as_number(require(object, "p_emergency", context),
                                   context + ".p_emergency");
  workflow.p_drug =
      as_number(require(object, "p_drug", context), context + ".p_drug");
  workflow.p_alarm =
      as_number(require(object, "p_alarm", context), context + ".p_alarm");
  if (auto it = object.find("inform_relatives_enabled"); it != object.end()) {
    if (!it->is_boolean()) fail(context, "inform_relatives_enabled: bool");
    workflow.inform_relatives_enabled = it->get<bool>();
  }
  return workflow;
}

json workflow_json(const WorkflowSpec& w) {
  json out;
  out["p_vital"] = w.p_vital;
  out["p_emergency"] = w.p_emergency;
  out["p_drug"] = w.p_drug;
  out["p_alarm"] = w.p_alarm;
  out["inform_relatives_enabled"] = w.inform_relatives_enabled;
  return out;
}

RequirementSpec parse_requirements(const json& object,
                                   const std::string& context) {
  check_keys(object, {"max_failure_prob", "max_avg_cost", "pair_budget_x"},
             context);
  RequirementSpec requirements;
  requirements.max_failure_prob =
      as_number(require(object, "max_failure_prob", context),
                context + ".max_failure_prob");
  requirements.max_avg_cost = as_number(
      require(object, "max_avg_cost", context), context + ".max_avg_cost");
  if (auto it = object.find("pair_budget_x"); it != object.end())
    requirements.pair_budget_x = as_number(*it, context + ".pair_budget_x");
  return requirements;
}

json requirements_json(const RequirementSpec& r) {
  json out;
  out["max_failure_prob"] = r.max_failure_prob;
  out["max_avg_cost"] = r.max_avg_cost;
  if (r.pair_budget_x) out["pair_budget_x"] = *r.pair_budget_x;
  return out;
}

Configuration parse_config(const json& object, const std::string& context) {
  check_keys(object, {"binding", "parallel_ops"}, context);
  Configuration config;
  const json& binding = require(object, "binding", context);
  if (!binding.is_object()) fail(context, "binding: expected an object");
  for (const auto& [key, value] : binding.items()) {
    const ServiceType type = parse_type(json(key), context + ".binding");
    if (!value.is_array() || value.empty())
      fail(context, "binding." + key + ": expected a non-empty array");
    std::vector<int> ids;
    for (const auto& id : value)
      ids.push_back(as_int(id, context + ".binding." + key));
    config.binding[type] = std::move(ids);
  }
  if (auto it = object.find("parallel_ops"); it != object.end()) {
    if (!it->is_array()) fail(context, "parallel_ops: expected an array");
    for (const auto& entry : *it)
      config.parallel_ops.push_back(
          parse_type(entry, context + ".parallel_ops"));
  }
  return config;
}

json config_json(const Configuration& config) {
  json binding = json::object();
  // Fixed operation order keeps serialization canonical.
  for (ServiceType t :
       {ServiceType::MedicalAnalysis, ServiceType::Alarm, ServiceType::Drug,
        ServiceType::InformRelatives})
    if (const auto* ids = config.chain(t)) binding[type_name(t)] = *ids;
  json out;
  out["binding"] = std::move(binding);
  json parallel = json::array();
  for (ServiceType t : config.parallel_ops) parallel.push_back(type_name(t));
  out["parallel_ops"] = std::move(parallel);
  return out;
}

ScenarioEvent parse_event(const json& object, const std::string& context) {
  if (!object.is_object()) fail(context, "expected an object");
  ScenarioEvent event;
  event.time_hours = as_number(require(object, "time_hours", context),
                               context + ".time_hours");
  const std::string type =
      as_string(require(object, "type", context), context + ".type");
  if (type == "new_service") {
    check_keys(object, {"time_hours", "type", "service"}, context);
    event.kind = NewServiceEvent{parse_service(
        require(object, "service", context), context + ".service")};
  } else if (type == "new_service_type") {
    check_keys(object,
               {"time_hours", "type", "services", "deadline_delta_hours"},
               context);
    NewServiceTypeEvent e;
    const json& services = require(object, "services", context);
    if (!services.is_array() || services.empty())
      fail(context, "services: expected a non-empty array");
    for (const auto& s : services)
      e.services.push_back(parse_service(s, context + ".services"));
    e.deadline_delta_hours =
        as_number(require(object, "deadline_delta_hours", context),
                  context + ".deadline_delta_hours");
    event.kind = std::move(e);
  } else if (type == "requirement_change") {
    check_keys(object, {"time_hours", "type", "requirements"}, context);
    event.kind = RequirementChangeEvent{
        parse_requirements(require(object, "requirements", context),
                           context + ".requirements")};
  } else if (type == "rate_shift") {
    check_keys(object,
               {"time_hours", "type", "service_type", "service_id",
                "new_failure_rate"},
               context);
    RateShiftEvent e;
    e.service.type = parse_type(require(object, "service_type", context),
                                context + ".service_type");
    e.service.id = as_int(require(object, "service_id", context),
                          context + ".service_id");
    e.new_failure_rate =
        as_number(require(object, "new_failure_rate", context),
                  context + ".new_failure_rate");
    event.kind = e;
  } else {
    fail(context, "unknown event type \"" + type + "\"");
  }
  return event;
}

json event_json(const ScenarioEvent& event) {
  json out;
  out["time_hours"] = event.time_hours;
  std::visit(
      [&out](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, NewServiceEvent>) {
          out["type"] = "new_service";
          out["service"] = service_json(e.service);
        } else if constexpr (std::is_same_v<T, NewServiceTypeEvent>) {
          out["type"] = "new_service_type";
          json services = json::array();
          for (const auto& s : e.services) services.push_back(service_json(s));
          out["services"] = std::move(services);
          out["deadline_delta_hours"] = e.deadline_delta_hours;
        } else if constexpr (std::is_same_v<T, RequirementChangeEvent>) {
          out["type"] = "requirement_change";
          out["requirements"] = requirements_json(e.requirements);
        } else {
          out["type"] = "rate_shift";
          out["service_type"] = type_name(e.service.type);
          out["service_id"] = e.service.id;
          out["new_failure_rate"] = e.new_failure_rate;
        }
      },
      event.kind);
  return out;
}

}  // namespace

ScenarioSpec parse_scenario_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("scenario", e.what());
  }
  const std::string context = "scenario";
  check_keys(root,
             {"name", "horizon_hours", "mean_invocations_per_hour", "arrivals",
              "drift_sigma", "request_drift_sigma", "refresh_period_hours",
              "seed", "retry_depth", "trigger_tau", "trigger_debounce_hours",
              "window_capacity", "services", "workflow", "requirements",
              "initial_config", "events"},
             context);

  ScenarioSpec scenario;
  scenario.name = as_string(require(root, "name", context), context + ".name");
  scenario.horizon_hours = as_number(require(root, "horizon_hours", context),
                                     context + ".horizon_hours");
  scenario.mean_invocations_per_hour =
      as_number(require(root, "mean_invocations_per_hour", context),
                context + ".mean_invocations_per_hour");
  const std::string arrivals = as_string(require(root, "arrivals", context),
                                         context + ".arrivals");
  if (arrivals == "poisson")
    scenario.arrivals = ArrivalMode::Poisson;
  else if (arrivals == "fixed")
    scenario.arrivals = ArrivalMode::Fixed;
  else
    fail(context, "arrivals must be \"poisson\" or \"fixed\"");
  scenario.drift_sigma = as_number(require(root, "drift_sigma", context),
                                   context + ".drift_sigma");
  scenario.request_drift_sigma =
      as_number(require(root, "request_drift_sigma", context),
                context + ".request_drift_sigma");
  scenario.refresh_period_hours =
      as_number(require(root, "refresh_period_hours", context),
                context + ".refresh_period_hours");
  const json& seed = require(root, "seed", context);
  if (!seed.is_number_unsigned()) fail(context, "seed: expected a u64");
  scenario.seed = seed.get<std::uint64_t>();
  scenario.retry_depth = as_int(require(root, "retry_depth", context),
                                context + ".retry_depth");
  scenario.trigger_tau = as_number(require(root, "trigger_tau", context),
                                   context + ".trigger_tau");
  scenario.trigger_debounce_hours =
      as_number(require(root, "trigger_debounce_hours", context),
                context + ".trigger_debounce_hours");
  scenario.window_capacity = as_int(require(root, "window_capacity", context),
                                    context + ".window_capacity");

  const json& services = require(root, "services", context);
  if (!services.is_array()) fail(context, "services: expected an array");
  for (const auto& s : services)
    scenario.initial_registry.services.push_back(
        parse_service(s, context + ".services"));

  scenario.workflow = parse_workflow(require(root, "workflow", context),
                                     context + ".workflow");
  scenario.requirements = parse_requirements(
      require(root, "requirements", context), context + ".requirements");
  scenario.initial_config = parse_config(
      require(root, "initial_config", context), context + ".initial_config");

  if (auto it = root.find("events"); it != root.end()) {
    if (!it->is_array()) fail(context, "events: expected an array");
    std::size_t i = 0;
    for (const auto& e : *it) {
      std::ostringstream event_context;
      event_context << context << ".events[" << i++ << "]";
      scenario.events.push_back(parse_event(e, event_context.str()));
    }
  }

  try {
    scenario.validate();
  } catch (const std::exception& e) {
    fail(context, e.what());
  }
  return scenario;
}

ScenarioSpec parse_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in.is_open())
    throw ScenarioParseError("cannot open scenario file: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario_text(text.str());
}

std::string serialize_scenario(const ScenarioSpec& scenario) {
  json root;
  root["name"] = scenario.name;
  root["horizon_hours"] = scenario.horizon_hours;
  root["mean_invocations_per_hour"] = scenario.mean_invocations_per_hour;
  root["arrivals"] =
      scenario.arrivals == ArrivalMode::Poisson ? "poisson" : "fixed";
  root["drift_sigma"] = scenario.drift_sigma;
  root["request_drift_sigma"] = scenario.request_drift_sigma;
  root["refresh_period_hours"] = scenario.refresh_period_hours;
  root["seed"] = scenario.seed;
  root["retry_depth"] = scenario.retry_depth;
  root["trigger_tau"] = scenario.trigger_tau;
  root["trigger_debounce_hours"] = scenario.trigger_debounce_hours;
  root["window_capacity"] = scenario.window_capacity;
  json services = json::array();
  for (const auto& s : scenario.initial_registry.services)
    services.push_back(service_json(s));
  root["services"] = std::move(services);
  root["workflow"] = workflow_json(scenario.workflow);
  root["requirements"] = requirements_json(scenario.requirements);
  root["initial_config"] = config_json(scenario.initial_config);
  json events = json::array();
  for (const auto& e : scenario.events) events.push_back(event_json(e));
  root["events"] = std::move(events);
  return root.dump(2) + "\n";
}

void write_scenario(const ScenarioSpec& scenario, const std::string& path) {
  std::ofstream out(path);
  if (!out.is_open())
    throw ScenarioParseError("cannot open scenario file for write: " + path);
  out << serialize_scenario(scenario);
}

std::vector<ScenarioSpec> parse_suite(const std::string& path) {
  std::ifstream in(path);
  if (!in.is_open()) throw ScenarioParseError("cannot open suite file: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  json root;
  try {
    root = json::parse(text.str());
  } catch (const json::parse_error& e) {
    fail("suite", e.what());
  }
  check_keys(root, {"name", "scenarios"}, "suite");
  const json& entries = require(root, "scenarios", "suite");
  if (!entries.is_array() || entries.empty())
    fail("suite", "scenarios: expected a non-empty array");

  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  std::vector<ScenarioSpec> suite;
  for (const auto& entry : entries) {
    if (entry.is_string())
      suite.push_back(
          parse_scenario((base / entry.get<std::string>()).string()));
    else
      suite.push_back(parse_scenario_text(entry.dump()));
  }
  return suite;
}

}  // namespace tas
