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

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>

#include "tas/rng.hpp"

namespace tas {

std::string to_string(Compliance c) {
  switch (c) {
    case Compliance::Compliant:
      return "compliant";
    case Compliance::Violating:
      return "violating";
    case Compliance::Undecided:
      return "undecided";
  }
  return "unknown";
}

ModelParams ModelParams::from_registry(const ServiceRegistry& registry,
                                       const WorkflowSpec& workflow) {
  ModelParams params;
  for (const auto& s : registry.services) {
    params.failure_rate[s.key()] = s.advertised_failure_rate;
    params.cost[s.key()] = s.cost;
  }
  params.p_vital = workflow.p_vital;
  params.p_drug = workflow.p_drug;
  return params;
}

std::string ModelParams::digest() const {
  std::uint64_t h = fnv1a(&p_vital, sizeof(p_vital));
  h = fnv1a(&p_drug, sizeof(p_drug), h);
  for (const auto& [key, rate] : failure_rate) {
    h = fnv1a(&key, sizeof(key), h);
    h = fnv1a(&rate, sizeof(rate), h);
  }
  for (const auto& [key, c] : cost) h = fnv1a(&c, sizeof(c), h);
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

namespace {

ResolvedChain resolve_chain(const Configuration& config,
                            const ModelParams& params, ServiceType type,
                            bool required) {
  ResolvedChain chain;
  const auto* ids = config.chain(type);
  if (!ids || ids->empty()) {
    if (required)
      throw std::invalid_argument("configuration does not bind " +
                                  to_string(type));
    return chain;
  }
  chain.parallel = config.is_parallel(type);
  for (int id : *ids) {
    const ServiceKey key{type, id};
    auto rate = params.failure_rate.find(key);
    auto cost = params.cost.find(key);
    if (rate == params.failure_rate.end() || cost == params.cost.end())
      throw std::invalid_argument("unresolved service " + to_string(type) +
                                  "/" + std::to_string(id));
    chain.services.push_back({key, rate->second, cost->second});
  }
  return chain;
}

template <typename P, typename RateOf>
ChainSpec<P> to_chain_spec(const ResolvedChain& chain, RateOf&& rate_of) {
  ChainSpec<P> spec;
  spec.parallel = chain.parallel;
  for (const auto& s : chain.services)
    spec.attempts.push_back({rate_of(s), s.cost});
  return spec;
}

}  // namespace

ResolvedConfig resolve_config(const Configuration& config,
                              const ModelParams& params) {
  ResolvedConfig out;
  out.medical =
      resolve_chain(config, params, ServiceType::MedicalAnalysis, true);
  out.alarm = resolve_chain(config, params, ServiceType::Alarm, true);
  out.drug = resolve_chain(config, params, ServiceType::Drug, true);
  out.inform =
      resolve_chain(config, params, ServiceType::InformRelatives, false);
  out.p_vital = params.p_vital;
  out.p_drug = params.p_drug;
  return out;
}

void build_chain_resolved(MarkovModel<double>& model,
                          const ResolvedConfig& config, bool labeled) {
  const SplitSpec<double> splits{config.p_vital, 1.0 - config.p_vital,
                                 config.p_drug, 1.0 - config.p_drug};
  auto rate = [](const BoundService& s) { return s.failure_rate; };
  build_markov<double>(model, splits,
                       to_chain_spec<double>(config.medical, rate),
                       to_chain_spec<double>(config.alarm, rate),
                       to_chain_spec<double>(config.drug, rate),
                       to_chain_spec<double>(config.inform, rate), 1.0,
                       labeled);
}

MarkovModel<double> build_chain(const WorkflowSpec& workflow,
                                const Configuration& config,
                                const ModelParams& params, bool labeled) {
  workflow.validate();
  ResolvedConfig resolved = resolve_config(config, params);
  if (!workflow.inform_relatives_enabled) resolved.inform.services.clear();
  else if (!resolved.has_inform())
    throw std::invalid_argument(
        "workflow enables InformRelatives but configuration does not bind it");
  MarkovModel<double> model;
  build_chain_resolved(model, resolved, labeled);
  return model;
}

double eval_failure_probability(const MarkovModel<double>& model) {
  NumericSolveScratch scratch;
  return solve_absorption(model, scratch).failure;
}

double eval_expected_cost(const MarkovModel<double>& model) {
  NumericSolveScratch scratch;
  return solve_absorption(model, scratch).cost;
}

double eval_failure_probability(const WorkflowSpec& workflow,
                                const Configuration& config,
                                const ModelParams& params) {
  return eval_failure_probability(build_chain(workflow, config, params));
}

double eval_expected_cost(const WorkflowSpec& workflow,
                          const Configuration& config,
                          const ModelParams& params) {
  return eval_expected_cost(build_chain(workflow, config, params));
}

namespace {

std::string service_variable(ServiceKey key) {
  return std::string("f_") + type_letter(key.type) + std::to_string(key.id);
}

}  // namespace

ParametricPair precompute_parametric(const WorkflowSpec& workflow,
                                     const Configuration& config,
                                     const ModelParams& params) {
  ResolvedConfig resolved = resolve_config(config, params);
  if (!workflow.inform_relatives_enabled) resolved.inform.services.clear();

  std::set<ServiceKey> keys;
  for (const auto* chain :
       {&resolved.medical, &resolved.alarm, &resolved.drug, &resolved.inform})
    for (const auto& s : chain->services) keys.insert(s.key);

  auto names = std::make_shared<std::vector<std::string>>();
  names->push_back("p_vital");
  names->push_back("p_drug");
  std::map<ServiceKey, std::size_t> index;
  for (const auto& key : keys) {
    index[key] = names->size();
    names->push_back(service_variable(key));
  }

  using Poly = PolynomialFunction;
  const Poly one = Poly::constant(names, 1.0);
  const Poly zero = Poly::constant(names, 0.0);
  const Poly vital = Poly::variable(names, 0);
  const Poly drug = Poly::variable(names, 1);
  const SplitSpec<Poly> splits{vital, one - vital, drug, one - drug};
  auto rate = [&](const BoundService& s) {
    return Poly::variable(names, index.at(s.key));
  };

  MarkovModel<Poly> model;
  build_markov<Poly>(model, splits, to_chain_spec<Poly>(resolved.medical, rate),
                     to_chain_spec<Poly>(resolved.alarm, rate),
                     to_chain_spec<Poly>(resolved.drug, rate),
                     to_chain_spec<Poly>(resolved.inform, rate), one);
  auto solved = solve_absorption<Poly>(model, zero, one);
  return {std::move(solved.failure), std::move(solved.cost)};
}

double eval_parametric(const PolynomialFunction& poly,
                       const ModelParams& params) {
  std::vector<double> values;
  values.reserve(poly.variables().size());
  for (const auto& name : poly.variables()) {
    if (name == "p_vital") {
      values.push_back(params.p_vital);
    } else if (name == "p_drug") {
      values.push_back(params.p_drug);
    } else if (name.size() > 2 && name[0] == 'f' && name[1] == '_') {
      ServiceType type;
      switch (name[2]) {
        case 'A': type = ServiceType::Alarm; break;
        case 'M': type = ServiceType::MedicalAnalysis; break;
        case 'D': type = ServiceType::Drug; break;
        case 'I': type = ServiceType::InformRelatives; break;
        default:
          throw std::invalid_argument("unknown parameter variable: " + name);
      }
      const int id = std::stoi(name.substr(3));
      auto it = params.failure_rate.find({type, id});
      if (it == params.failure_rate.end())
        throw std::invalid_argument("missing binding for variable " + name);
      values.push_back(it->second);
    } else {
      throw std::invalid_argument("unknown parameter variable: " + name);
    }
  }
  return poly.evaluate(values);
}

Compliance check_requirements(double failure_prob, double expected_cost,
                              const RequirementSpec& requirements) {
  return (failure_prob <= requirements.max_failure_prob &&
          expected_cost <= requirements.max_avg_cost)
             ? Compliance::Compliant
             : Compliance::Violating;
}

Verdict verdict_exact(double failure_prob, double expected_cost,
                      const RequirementSpec& requirements) {
  Verdict v;
  v.failure_prob = failure_prob;
  v.expected_cost = expected_cost;
  v.compliant = check_requirements(failure_prob, expected_cost, requirements);
  v.method = "rqv";
  return v;
}

Verdict verdict_exact(const WorkflowSpec& workflow, const Configuration& config,
                      const ModelParams& params,
                      const RequirementSpec& requirements) {
  const MarkovModel<double> model = build_chain(workflow, config, params);
  NumericSolveScratch scratch;
  const auto solved = solve_absorption(model, scratch);
  Verdict v = verdict_exact(solved.failure, solved.cost, requirements);
  v.evidence_volume = model.states.size();
  return v;
}

std::string export_transition_list(const MarkovModel<double>& model) {
  std::ostringstream out;
  if (!model.labels.empty()) {
    for (std::size_t s = 0; s < model.labels.size(); ++s)
      out << "# state " << s << ": " << model.labels[s] << "\n";
  }
  out << "# entry " << model.entry << "\n";
  for (std::size_t s = 0; s < model.states.size(); ++s) {
    const auto& state = model.states[s];
    for (std::int32_t e = 0; e < state.n_edges; ++e) {
      const auto& edge = state.edges[e];
      out << s << ", " << edge.to << ", " << edge.prob << ", " << edge.reward
          << "\n";
    }
  }
  return out.str();
}

Verdict AssuranceEngine::verify(const WorkflowSpec& workflow,
                                const Configuration& config,
                                const ModelParams& params,
                                const RequirementSpec& requirements) {
  ResolvedConfig resolved = resolve_config(config, params);
  if (!workflow.inform_relatives_enabled) resolved.inform.services.clear();
  return verify_resolved(resolved, requirements);
}

Verdict ExactEngine::verify_resolved(const ResolvedConfig& config,
                                     const RequirementSpec& requirements) {
  const auto start = std::chrono::steady_clock::now();
  build_chain_resolved(scratch_model_, config);
  const auto solved = solve_absorption(scratch_model_, scratch_solve_);
  Verdict v = verdict_exact(solved.failure, solved.cost, requirements);
  v.evidence_volume = scratch_model_.states.size();
  v.wall_micros = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::microseconds>(
          std::chrono::steady_clock::now() - start)
          .count());
  return v;
}

namespace {

std::string resolved_digest(const ResolvedConfig& config) {
  std::ostringstream out;
  for (const auto* chain :
       {&config.medical, &config.alarm, &config.drug, &config.inform}) {
    for (const auto& s : chain->services)
      out << type_letter(s.key.type) << s.key.id << (chain->parallel ? '*' : '.');
    out << '|';
  }
  return out.str();
}

}  // namespace

Verdict ParametricExactEngine::verify_resolved(
    const ResolvedConfig& config, const RequirementSpec& requirements) {
  const auto start = std::chrono::steady_clock::now();

  // Rebuild the minimal Configuration/params view the precomputation needs.
  const std::string key = resolved_digest(config);
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    Configuration shape;
    ModelParams params;
    WorkflowSpec workflow;
    workflow.p_vital = config.p_vital;
    workflow.p_emergency = 1.0 - config.p_vital;
    workflow.p_drug = config.p_drug;
    workflow.p_alarm = 1.0 - config.p_drug;
    workflow.inform_relatives_enabled = config.has_inform();
    auto add = [&](const ResolvedChain& chain, ServiceType type) {
      if (chain.services.empty()) return;
      auto& ids = shape.binding[type];
      for (const auto& s : chain.services) {
        ids.push_back(s.key.id);
        params.failure_rate[s.key] = s.failure_rate;
        params.cost[s.key] = s.cost;
      }
      if (chain.parallel) shape.parallel_ops.push_back(type);
    };
    add(config.medical, ServiceType::MedicalAnalysis);
    add(config.alarm, ServiceType::Alarm);
    add(config.drug, ServiceType::Drug);
    add(config.inform, ServiceType::InformRelatives);
    it = cache_.emplace(key, precompute_parametric(workflow, shape, params))
             .first;
  }

  ModelParams point;
  point.p_vital = config.p_vital;
  point.p_drug = config.p_drug;
  for (const auto* chain :
       {&config.medical, &config.alarm, &config.drug, &config.inform})
    for (const auto& s : chain->services)
      point.failure_rate[s.key] = s.failure_rate;

  const double p = eval_parametric(it->second.failure, point);
  const double cost = eval_parametric(it->second.cost, point);
  Verdict v = verdict_exact(p, cost, requirements);
  v.method = "rqv-parametric";
  v.evidence_volume = it->second.failure.terms().size() +
                      it->second.cost.terms().size();
  v.wall_micros = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::microseconds>(
          std::chrono::steady_clock::now() - start)
          .count());
  return v;
}

}  // namespace tas
