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

#include "tas/mape.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "tas/exact.hpp"
#include "tas/selection.hpp"
#include "tas/smc.hpp"

namespace tas {

using json = nlohmann::ordered_json;

EvidenceLog::~EvidenceLog() = default;

void EvidenceLog::append(std::string line) {
  if (file_ && file_->is_open()) (*file_) << line << "\n";
  lines_.push_back(std::move(line));
}

void EvidenceLog::attach_file(const std::string& path) {
  file_ = std::make_unique<std::ofstream>(path);
  if (!file_->is_open())
    throw std::runtime_error("cannot open evidence log file: " + path);
  for (const auto& line : lines_) (*file_) << line << "\n";
}

MapeOptions MapeOptions::from_scenario(const ScenarioSpec& scenario) {
  MapeOptions options;
  options.window_capacity = scenario.window_capacity;
  options.retry_depth = scenario.retry_depth;
  options.trigger_tau = scenario.trigger_tau;
  options.trigger_debounce_hours = scenario.trigger_debounce_hours;
  return options;
}

MapeController::MapeController(const ScenarioSpec& scenario,
                               AssuranceEngine& engine, MapeOptions options)
    : engine_(engine), options_(options) {
  knowledge_.registry_snapshot = scenario.initial_registry;
  knowledge_.workflow = scenario.workflow;
  knowledge_.current_config = scenario.initial_config;
  knowledge_.requirements = scenario.requirements;
}

void MapeController::bind_trace(TraceLog& trace) {
  trace_ = &trace;
  trace.engine = engine_.name();
}

void MapeController::monitor_update(const InvocationOutcome& outcome) {
  for (const auto& step : outcome.steps) {
    const ServiceKey key{step.op, step.service_id};
    if (!knowledge_.registry_snapshot.find(key)) {
      json record;
      record["clock"] = outcome.clock_hours;
      record["kind"] = "monitor-skip";
      record["service"] = to_string(key.type) + "/" + std::to_string(key.id);
      evidence_.append(record.dump());
      continue;
    }
    knowledge_.windows[key].push(!step.success, options_.window_capacity);
    knowledge_.stale_estimates.insert(key);
  }
}

Estimate MapeController::estimate_failure_rate(ServiceKey key) const {
  auto cached = knowledge_.estimate_cache.find(key);
  if (cached != knowledge_.estimate_cache.end() &&
      knowledge_.stale_estimates.find(key) == knowledge_.stale_estimates.end())
    return cached->second;

  Estimate estimate;
  auto window = knowledge_.windows.find(key);
  const int n = window == knowledge_.windows.end() ? 0 : window->second.size();
  if (n == 0) {
    const auto* service = knowledge_.registry_snapshot.find(key);
    estimate.point = service ? service->advertised_failure_rate : 0.5;
    estimate.ci_low = 0.0;
    estimate.ci_high = 1.0;
    estimate.sample_count = 0;
  } else {
    const int failures = window->second.failure_count;
    estimate.point = (failures + 1.0) / (n + 2.0);
    const double half_width =
        std::sqrt(std::log(2.0 / options_.hoeffding_delta) / (2.0 * n));
    estimate.ci_low = std::max(0.0, estimate.point - half_width);
    estimate.ci_high = std::min(1.0, estimate.point + half_width);
    estimate.sample_count = n;
  }
  knowledge_.estimate_cache[key] = estimate;
  knowledge_.stale_estimates.erase(key);
  return estimate;
}

ModelParams MapeController::current_params() const {
  ModelParams params;
  for (const auto& s : knowledge_.registry_snapshot.services) {
    params.failure_rate[s.key()] = estimate_failure_rate(s.key()).point;
    params.cost[s.key()] = s.cost;
  }
  params.p_vital = knowledge_.workflow.p_vital;
  params.p_drug = knowledge_.workflow.p_drug;
  return params;
}

namespace {

std::uint64_t elapsed_micros(std::chrono::steady_clock::time_point start) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::microseconds>(
          std::chrono::steady_clock::now() - start)
          .count());
}

json verdict_json(double clock, const std::string& config_digest,
                  const std::string& params_digest, const Verdict& v) {
  json record;
  record["clock"] = clock;
  record["kind"] = "verification";
  record["configuration"] = config_digest;
  record["params"] = params_digest;
  record["result"] = to_string(v.compliant);
  record["p"] = v.failure_prob;
  record["cost"] = v.expected_cost;
  record["method"] = v.method;
  record["wall_micros"] = v.wall_micros;
  return record;
}

// Shared candidate ordering. Compliant candidates: cheapest, then lowest
// failure probability, then enumeration order. Degraded ordering: lowest
// failure probability, then cheapest, then enumeration order.
bool better_compliant(const Verdict& a, const Verdict& b) {
  if (a.expected_cost != b.expected_cost)
    return a.expected_cost < b.expected_cost;
  return a.failure_prob < b.failure_prob;
}

bool better_degraded(const Verdict& a, const Verdict& b) {
  if (a.failure_prob != b.failure_prob) return a.failure_prob < b.failure_prob;
  return a.expected_cost < b.expected_cost;
}

// Candidate-level orderings add the knowledge-model prediction between the
// verdict fields so quantized sampling verdicts do not tie straight into the
// cost comparison.
bool better_compliant(const CandidateVerdict& a, const CandidateVerdict& b) {
  if (a.verdict.expected_cost != b.verdict.expected_cost)
    return a.verdict.expected_cost < b.verdict.expected_cost;
  if (a.verdict.failure_prob != b.verdict.failure_prob)
    return a.verdict.failure_prob < b.verdict.failure_prob;
  return a.model_failure_prob < b.model_failure_prob;
}

bool better_degraded(const CandidateVerdict& a, const CandidateVerdict& b) {
  if (a.verdict.failure_prob != b.verdict.failure_prob)
    return a.verdict.failure_prob < b.verdict.failure_prob;
  if (a.model_failure_prob != b.model_failure_prob)
    return a.model_failure_prob < b.model_failure_prob;
  return a.verdict.expected_cost < b.verdict.expected_cost;
}

}  // namespace

std::vector<CandidateVerdict> MapeController::analyze(
    const std::vector<Configuration>& candidates) {
  if (candidates.empty())
    throw std::invalid_argument("analyze: empty candidate list");

  const ModelParams params = current_params();
  const std::string params_digest = params.digest();
  const double clock = last_analysis_clock_ < 0.0 ? 0.0 : last_analysis_clock_;
  const bool detailed =
      candidates.size() <= options_.evidence_detail_limit;

  std::vector<CandidateVerdict> verdicts;
  verdicts.reserve(candidates.size());
  std::uint64_t total_wall = 0;
  std::uint64_t total_volume = 0;
  for (const auto& candidate : candidates) {
    const double model_p =
        eval_failure_probability(knowledge_.workflow, candidate, params);
    Verdict verdict;
    try {
      verdict = engine_.verify(knowledge_.workflow, candidate, params,
                               knowledge_.requirements);
    } catch (const std::exception& e) {
      verdict.compliant = Compliance::Undecided;
      verdict.method = engine_.name();
      json record;
      record["clock"] = clock;
      record["kind"] = "verification-error";
      record["configuration"] = candidate.digest();
      record["error"] = e.what();
      evidence_.append(record.dump());
      verdicts.push_back({candidate, verdict, model_p});
      continue;
    }
    total_wall += verdict.wall_micros;
    total_volume += verdict.evidence_volume;
    if (detailed)
      evidence_.append(
          verdict_json(clock, candidate.digest(), params_digest, verdict)
              .dump());
    if (trace_ && detailed) {
      trace_->verifications.push_back(
          {clock, verdict.method, candidate.digest(), verdict.compliant,
           verdict.failure_prob, verdict.expected_cost, verdict.wall_micros,
           verdict.evidence_volume, 1});
    }
    verdicts.push_back({candidate, verdict, model_p});
  }

  if (!detailed) {
    json record;
    record["clock"] = clock;
    record["kind"] = "verification-batch";
    record["candidates"] = candidates.size();
    record["params"] = params_digest;
    record["method"] = engine_.name();
    record["wall_micros"] = total_wall;
    record["evidence_volume"] = total_volume;
    evidence_.append(record.dump());
    if (trace_)
      trace_->verifications.push_back({clock, engine_.name(), "(batch)",
                                       Compliance::Undecided, 0.0, 0.0,
                                       total_wall, total_volume,
                                       candidates.size()});
  }
  return verdicts;
}

AdaptationPlan MapeController::plan(
    const std::vector<CandidateVerdict>& verdicts) const {
  if (verdicts.empty())
    throw std::invalid_argument("plan: empty verdict list");

  const CandidateVerdict* best_compliant_candidate = nullptr;
  const CandidateVerdict* best_degraded_candidate = nullptr;
  for (const auto& cv : verdicts) {
    if (cv.verdict.compliant == Compliance::Compliant &&
        (!best_compliant_candidate ||
         better_compliant(cv, *best_compliant_candidate)))
      best_compliant_candidate = &cv;
    if (!best_degraded_candidate ||
        better_degraded(cv, *best_degraded_candidate))
      best_degraded_candidate = &cv;
  }

  AdaptationPlan result;
  const CandidateVerdict* chosen = best_compliant_candidate;
  if (!chosen) {
    chosen = best_degraded_candidate;
    result.degraded = true;
  }
  if (chosen && !(chosen->config == knowledge_.current_config))
    result.target = chosen->config;
  return result;
}

void MapeController::execute_plan(const AdaptationPlan& plan, double clock) {
  if (plan.noop()) {
    json record;
    record["clock"] = clock;
    record["kind"] = "adaptation";
    record["configuration"] = knowledge_.current_config.digest();
    record["noop"] = true;
    record["degraded"] = plan.degraded;
    evidence_.append(record.dump());
    if (trace_)
      trace_->adaptations.push_back({clock, knowledge_.current_config.digest(),
                                     knowledge_.current_config.digest(),
                                     plan.degraded, true, 0});
    return;
  }

  // A plan may be stale after a refresh removed services; discard and ask
  // for a fresh analysis instead of applying a dangling binding.
  for (const auto& [type, ids] : plan.target->binding) {
    for (int id : ids) {
      if (!knowledge_.registry_snapshot.find({type, id})) {
        json record;
        record["clock"] = clock;
        record["kind"] = "plan-discarded";
        record["configuration"] = plan.target->digest();
        record["missing"] = to_string(type) + "/" + std::to_string(id);
        evidence_.append(record.dump());
        pending_content_trigger_ = true;
        return;
      }
    }
  }

  const std::string old_digest = knowledge_.current_config.digest();
  knowledge_.current_config = *plan.target;
  json record;
  record["clock"] = clock;
  record["kind"] = "adaptation";
  record["old"] = old_digest;
  record["new"] = knowledge_.current_config.digest();
  record["degraded"] = plan.degraded;
  evidence_.append(record.dump());
  if (trace_)
    trace_->adaptations.push_back({clock, old_digest,
                                   knowledge_.current_config.digest(),
                                   plan.degraded, false, 0});
}

void MapeController::integrate_service_type(const NewServiceTypeEvent& event,
                                            double clock) {
  if (event.services.empty())
    throw std::invalid_argument("integrate_service_type: no services");

  for (const auto& s : event.services)
    if (!knowledge_.registry_snapshot.find(s.key()))
      knowledge_.registry_snapshot.services.push_back(s);

  const ConcreteService* cheapest = nullptr;
  for (const auto& s : event.services)
    if (!cheapest || s.cost < cheapest->cost ||
        (s.cost == cheapest->cost && s.id < cheapest->id))
      cheapest = &s;

  const std::vector<int> binding{cheapest->id};
  const bool already =
      knowledge_.workflow.inform_relatives_enabled &&
      knowledge_.current_config.chain(ServiceType::InformRelatives) != nullptr &&
      *knowledge_.current_config.chain(ServiceType::InformRelatives) == binding;

  knowledge_.workflow.inform_relatives_enabled = true;
  knowledge_.current_config.binding[ServiceType::InformRelatives] = binding;

  json record;
  record["clock"] = clock;
  record["kind"] = "integration";
  record["service"] = to_string(cheapest->type) + "/" +
                      std::to_string(cheapest->id);
  record["idempotent_redelivery"] = already;
  evidence_.append(record.dump());
  if (trace_ && !already)
    trace_->integrations.push_back(
        {clock, clock, event.deadline_delta_hours, cheapest->key()});
  if (!already) pending_content_trigger_ = true;
}

bool MapeController::adaptation_trigger(double clock) const {
  if (hour_tick_pending_ || pending_content_trigger_ ||
      pending_requirement_trigger_)
    return true;
  if (pending_drift_trigger_) {
    // Estimate-drift triggers are debounced so a noisy window cannot force
    // an analysis storm between hourly ticks.
    return last_analysis_clock_ < 0.0 ||
           clock - last_analysis_clock_ >= options_.trigger_debounce_hours;
  }
  return false;
}

std::uint64_t MapeController::candidate_count() const {
  return count_configurations(knowledge_.registry_snapshot,
                              WorkflowSpec{},  // core operations only
                              options_.retry_depth);
}

std::vector<std::vector<int>> prune_options(
    const std::vector<std::vector<int>>& options,
    const std::map<ServiceKey, double>& rates,
    const std::map<ServiceKey, double>& costs, ServiceType type, int keep) {
  if (static_cast<int>(options.size()) <= 2 * keep) return options;

  struct Scored {
    std::size_t index;
    double chain_failure;
    double expected_cost;
  };
  std::vector<Scored> scored;
  scored.reserve(options.size());
  for (std::size_t i = 0; i < options.size(); ++i) {
    double fail = 1.0;
    double cost = 0.0;
    double reach = 1.0;
    for (int id : options[i]) {
      const double r = rates.at({type, id});
      cost += reach * costs.at({type, id});
      fail *= r;
      reach *= r;
    }
    scored.push_back({i, fail, cost});
  }

  std::set<std::size_t> kept;
  auto take = [&](auto cmp) {
    std::vector<Scored> order = scored;
    std::stable_sort(order.begin(), order.end(), cmp);
    for (int i = 0; i < keep && i < static_cast<int>(order.size()); ++i)
      kept.insert(order[i].index);
  };
  take([](const Scored& a, const Scored& b) {
    return a.chain_failure < b.chain_failure;
  });
  take([](const Scored& a, const Scored& b) {
    return a.expected_cost < b.expected_cost;
  });

  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < options.size(); ++i)
    if (kept.count(i)) out.push_back(options[i]);
  return out;
}

void MapeController::run_cycle(double clock, const std::string& reason) {
  const auto cycle_start = std::chrono::steady_clock::now();
  last_analysis_clock_ = clock;
  hour_tick_pending_ = false;
  pending_content_trigger_ = false;
  pending_requirement_trigger_ = false;
  pending_drift_trigger_ = false;

  const ModelParams params = current_params();
  const std::string params_digest = params.digest();

  // Candidate space: per-operation alternative lists over the current
  // snapshot; InformRelatives keeps its fixed lowest-cost binding.
  std::vector<ServiceType> ops(std::begin(kCoreServiceTypes),
                               std::end(kCoreServiceTypes));
  std::vector<std::vector<std::vector<int>>> tables;
  for (auto op : ops)
    tables.push_back(enumerate_chains(
        knowledge_.registry_snapshot.of_type(op), options_.retry_depth));

  std::uint64_t count = 1;
  for (const auto& table : tables) count *= table.size();

  // Sampling engines get a pruned set when the full space would blow the
  // per-analysis sample budget.
  std::uint64_t samples_each = 0;
  if (const auto* smc = dynamic_cast<const SmcEngine*>(&engine_))
    samples_each = required_samples(smc->strategy().approximation,
                                    smc->strategy().error_prob);
  if (samples_each > 0 && count * samples_each > options_.sample_budget) {
    for (std::size_t i = 0; i < tables.size(); ++i)
      tables[i] = prune_options(tables[i], params.failure_rate, params.cost,
                                ops[i], options_.prune_keep);
    count = 1;
    for (const auto& table : tables) count *= table.size();
  }

  json start_record;
  start_record["clock"] = clock;
  start_record["kind"] = "analysis";
  start_record["reason"] = reason;
  start_record["candidates"] = count;
  start_record["params"] = params_digest;
  evidence_.append(start_record.dump());

  const std::vector<int>* inform_binding =
      knowledge_.workflow.inform_relatives_enabled
          ? knowledge_.current_config.chain(ServiceType::InformRelatives)
          : nullptr;

  AdaptationPlan chosen_plan;
  if (count <= options_.full_enumeration_limit) {
    std::vector<Configuration> candidates;
    candidates.reserve(count);
    std::vector<std::size_t> index(ops.size(), 0);
    while (true) {
      Configuration config;
      for (std::size_t i = 0; i < ops.size(); ++i)
        config.binding[ops[i]] = tables[i][index[i]];
      if (inform_binding)
        config.binding[ServiceType::InformRelatives] = *inform_binding;
      config.parallel_ops = knowledge_.current_config.parallel_ops;
      candidates.push_back(std::move(config));
      std::size_t pos = ops.size();
      bool done = true;
      while (pos > 0) {
        --pos;
        if (++index[pos] < tables[pos].size()) {
          done = false;
          break;
        }
        index[pos] = 0;
      }
      if (done) break;
    }
    chosen_plan = plan(analyze(candidates));
  } else {
    chosen_plan = [&] {
      // Streaming exhaustive analysis: resolved chains are precomputed per
      // option and the best candidates tracked on the fly; the evidence log
      // gets one aggregated record.
      std::vector<std::vector<ResolvedChain>> resolved(tables.size());
      for (std::size_t i = 0; i < tables.size(); ++i) {
        for (const auto& ids : tables[i]) {
          ResolvedChain chain;
          for (int id : ids) {
            const ServiceKey key{ops[i], id};
            chain.services.push_back({key, params.failure_rate.at(key),
                                      params.cost.at(key)});
          }
          chain.parallel = knowledge_.current_config.is_parallel(ops[i]);
          resolved[i].push_back(std::move(chain));
        }
      }
      ResolvedChain inform_chain;
      if (inform_binding) {
        for (int id : *inform_binding) {
          const ServiceKey key{ServiceType::InformRelatives, id};
          inform_chain.services.push_back({key, params.failure_rate.at(key),
                                           params.cost.at(key)});
        }
      }

      ResolvedConfig scratch;
      scratch.inform = inform_chain;
      scratch.p_vital = params.p_vital;
      scratch.p_drug = params.p_drug;

      std::optional<Verdict> best_compliant_v, best_degraded_v;
      std::vector<std::size_t> best_compliant_i, best_degraded_i;
      std::uint64_t total_wall = 0;
      std::uint64_t total_volume = 0;

      std::vector<std::size_t> index(ops.size(), 0);
      while (true) {
        scratch.medical = resolved[0][index[0]];
        scratch.alarm = resolved[1][index[1]];
        scratch.drug = resolved[2][index[2]];
        const Verdict verdict =
            engine_.verify_resolved(scratch, knowledge_.requirements);
        total_wall += verdict.wall_micros;
        total_volume += verdict.evidence_volume;
        if (verdict.compliant == Compliance::Compliant &&
            (!best_compliant_v || better_compliant(verdict, *best_compliant_v))) {
          best_compliant_v = verdict;
          best_compliant_i = index;
        }
        if (!best_degraded_v || better_degraded(verdict, *best_degraded_v)) {
          best_degraded_v = verdict;
          best_degraded_i = index;
        }
        std::size_t pos = ops.size();
        bool done = true;
        while (pos > 0) {
          --pos;
          if (++index[pos] < tables[pos].size()) {
            done = false;
            break;
          }
          index[pos] = 0;
        }
        if (done) break;
      }

      json record;
      record["clock"] = clock;
      record["kind"] = "verification-batch";
      record["candidates"] = count;
      record["params"] = params_digest;
      record["method"] = engine_.name();
      record["wall_micros"] = total_wall;
      record["evidence_volume"] = total_volume;
      evidence_.append(record.dump());
      if (trace_)
        trace_->verifications.push_back({clock, engine_.name(), "(batch)",
                                         Compliance::Undecided, 0.0, 0.0,
                                         total_wall, total_volume, count});

      AdaptationPlan out;
      const std::vector<std::size_t>* pick = nullptr;
      if (best_compliant_v) {
        pick = &best_compliant_i;
      } else if (best_degraded_v) {
        pick = &best_degraded_i;
        out.degraded = true;
      }
      if (pick) {
        Configuration config;
        for (std::size_t i = 0; i < ops.size(); ++i)
          config.binding[ops[i]] = tables[i][(*pick)[i]];
        if (inform_binding)
          config.binding[ServiceType::InformRelatives] = *inform_binding;
        config.parallel_ops = knowledge_.current_config.parallel_ops;
        if (!(config == knowledge_.current_config)) out.target = config;
      }
      return out;
    }();
  }

  execute_plan(chosen_plan, clock);
  if (trace_ && !trace_->adaptations.empty())
    trace_->adaptations.back().latency_micros = elapsed_micros(cycle_start);

  // Remember the parameter values the plan was based on; rule (d) of the
  // trigger compares fresh estimates against these.
  rates_at_last_plan_ = params.failure_rate;
}

void MapeController::request_analysis(double clock, const std::string& reason) {
  if (adaptation_trigger(clock)) run_cycle(clock, reason);
}

void MapeController::on_episode_start(const ServiceRegistry& visible,
                                      double clock) {
  knowledge_.registry_snapshot = visible;
  hour_tick_pending_ = true;
  request_analysis(clock, "episode-start");
}

void MapeController::on_outcome(const InvocationOutcome& outcome) {
  monitor_update(outcome);
  for (const auto& step : outcome.steps) {
    const ServiceKey key{step.op, step.service_id};
    auto reference = rates_at_last_plan_.find(key);
    if (reference == rates_at_last_plan_.end()) continue;
    if (std::abs(estimate_failure_rate(key).point - reference->second) >
        options_.trigger_tau) {
      pending_drift_trigger_ = true;
      break;
    }
  }
  if (pending_drift_trigger_)
    request_analysis(outcome.clock_hours, "estimate-drift");
}

void MapeController::on_hour_tick(double clock) {
  hour_tick_pending_ = true;
  request_analysis(clock, "hourly-tick");
}

void MapeController::on_registry_refresh(const ServiceRegistry& visible,
                                         double clock) {
  // Detect content changes (new/removed services or moved advertised rates).
  bool changed =
      visible.services.size() != knowledge_.registry_snapshot.services.size();
  if (!changed) {
    for (const auto& s : visible.services) {
      const auto* previous = knowledge_.registry_snapshot.find(s.key());
      if (!previous ||
          previous->advertised_failure_rate != s.advertised_failure_rate ||
          previous->cost != s.cost) {
        changed = true;
        break;
      }
    }
  }
  knowledge_.registry_snapshot = visible;
  if (changed) {
    pending_content_trigger_ = true;
    request_analysis(clock, "registry-refresh");
  }
}

void MapeController::on_requirement_change(const RequirementSpec& requirements,
                                           double clock) {
  knowledge_.requirements = requirements;
  json record;
  record["clock"] = clock;
  record["kind"] = "requirement-change";
  record["max_failure_prob"] = requirements.max_failure_prob;
  record["max_avg_cost"] = requirements.max_avg_cost;
  evidence_.append(record.dump());
  pending_requirement_trigger_ = true;
  request_analysis(clock, "requirement-change");
}

void MapeController::on_new_service_type(const NewServiceTypeEvent& event,
                                         double clock) {
  integrate_service_type(event, clock);
  request_analysis(clock, "service-type-integration");
}

}  // namespace tas
