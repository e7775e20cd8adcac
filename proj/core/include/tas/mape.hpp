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

#ifndef TAS_MAPE_HPP
#define TAS_MAPE_HPP

#include <deque>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tas/engine.hpp"
#include "tas/simulator.hpp"
#include "tas/trace.hpp"

namespace tas {

/// Windowed failure-rate estimate with a Hoeffding confidence interval.
struct Estimate {
  double point = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  int sample_count = 0;
};

/// Bounded success/failure observation window for one service.
struct ObservationWindow {
  std::deque<bool> failures;  // true = failed invocation
  int failure_count = 0;

  void push(bool failed, int capacity) {
    failures.push_back(failed);
    failure_count += failed ? 1 : 0;
    while (static_cast<int>(failures.size()) > capacity) {
      failure_count -= failures.front() ? 1 : 0;
      failures.pop_front();
    }
  }
  int size() const { return static_cast<int>(failures.size()); }
};

/// Append-only, human-readable evidence log: one structured-text (JSON)
/// record per verification, adaptation, and integration.
class EvidenceLog {
 public:
  void append(std::string line);
  const std::vector<std::string>& lines() const { return lines_; }
  /// Mirrors every subsequent record to a file as well.
  void attach_file(const std::string& path);
  ~EvidenceLog();

 private:
  std::vector<std::string> lines_;
  std::unique_ptr<std::ofstream> file_;
};

/// The MAPE-K knowledge base. Holds only information the adaptive system is
/// allowed to observe: advertised profiles, invocation outcomes, and its own
/// configuration and requirements.
struct Knowledge {
  ServiceRegistry registry_snapshot;
  WorkflowSpec workflow;
  Configuration current_config;
  RequirementSpec requirements;
  std::map<ServiceKey, ObservationWindow> windows;
  // Estimate cache; entries recomputed lazily after a window change.
  mutable std::map<ServiceKey, Estimate> estimate_cache;
  mutable std::set<ServiceKey> stale_estimates;
};

struct CandidateVerdict {
  Configuration config;
  Verdict verdict;
  // Knowledge-model prediction, used only to order candidates whose verdicts
  // tie. Sampling verdicts quantize failure_prob to multiples of 1/n, so ties
  // at zero are common and cost alone would pick needlessly risky chains.
  double model_failure_prob = 0.0;
};

struct AdaptationPlan {
  std::optional<Configuration> target;  // empty = keep current (no-op)
  bool degraded = false;                // no compliant candidate existed
  bool noop() const { return !target.has_value(); }
};

struct MapeOptions {
  int window_capacity = 200;
  double hoeffding_delta = 0.05;
  int retry_depth = 2;
  double trigger_tau = 0.02;
  double trigger_debounce_hours = 0.25;
  // Candidate spaces above this are analyzed in streaming mode with one
  // aggregated evidence record instead of per-candidate records.
  std::uint64_t full_enumeration_limit = 20000;
  // Sampling engines get a pruned candidate set whenever the full space
  // would exceed this many simulation samples per analysis.
  std::uint64_t sample_budget = 2'000'000;
  int prune_keep = 6;
  // At most this many per-candidate evidence-log lines per analysis.
  std::uint64_t evidence_detail_limit = 2000;

  static MapeOptions from_scenario(const ScenarioSpec& scenario);
};

/// The MAPE-K feedback loop over one assurance engine.
class MapeController final : public AdaptationController {
 public:
  MapeController(const ScenarioSpec& scenario, AssuranceEngine& engine,
                 MapeOptions options);
  MapeController(const ScenarioSpec& scenario, AssuranceEngine& engine)
      : MapeController(scenario, engine, MapeOptions::from_scenario(scenario)) {}

  // -- MAPE operations (public for direct testing) --

  /// Appends each per-step observation to its service window; outcomes that
  /// reference unknown services are logged and skipped.
  void monitor_update(const InvocationOutcome& outcome);

  /// Laplace-smoothed point with a Hoeffding interval; falls back to the
  /// advertised rate with interval [0,1] when the window is empty.
  Estimate estimate_failure_rate(ServiceKey key) const;

  /// Verifies each candidate with the engine, using current estimates as
  /// model parameters; engine errors mark the candidate Undecided.
  std::vector<CandidateVerdict> analyze(
      const std::vector<Configuration>& candidates);

  /// Cheapest compliant candidate (ties: failure probability, then
  /// enumeration order); degraded fallback minimizes failure probability.
  AdaptationPlan plan(const std::vector<CandidateVerdict>& verdicts) const;

  /// Atomically swaps the active configuration between invocations. A plan
  /// referencing services absent from the current snapshot is discarded and
  /// a re-analysis is requested.
  void execute_plan(const AdaptationPlan& plan, double clock);

  /// Scenario-S4 workflow extension: enables InformRelatives and binds the
  /// cheapest announced service. Idempotent on re-delivery.
  void integrate_service_type(const NewServiceTypeEvent& event, double clock);

  /// Whether a full analyze/plan/execute cycle should run now.
  bool adaptation_trigger(double clock) const;

  /// One complete loop iteration: candidate generation, analysis, planning,
  /// execution. Large candidate spaces are streamed.
  void run_cycle(double clock, const std::string& reason);

  // -- controller interface --
  void bind_trace(TraceLog& trace) override;
  void on_episode_start(const ServiceRegistry& visible, double clock) override;
  void on_outcome(const InvocationOutcome& outcome) override;
  void on_hour_tick(double clock) override;
  void on_registry_refresh(const ServiceRegistry& visible,
                           double clock) override;
  void on_requirement_change(const RequirementSpec& requirements,
                             double clock) override;
  void on_new_service_type(const NewServiceTypeEvent& event,
                           double clock) override;

  const WorkflowSpec& active_workflow() const override {
    return knowledge_.workflow;
  }
  const Configuration& active_configuration() const override {
    return knowledge_.current_config;
  }

  const Knowledge& knowledge() const { return knowledge_; }
  Knowledge& knowledge() { return knowledge_; }
  EvidenceLog& evidence() { return evidence_; }
  const MapeOptions& options() const { return options_; }

  /// Model parameters derived from current estimates (advertised profiles
  /// as the no-data fallback).
  ModelParams current_params() const;

 private:
  void request_analysis(double clock, const std::string& reason);
  std::uint64_t candidate_count() const;

  AssuranceEngine& engine_;
  MapeOptions options_;
  Knowledge knowledge_;
  EvidenceLog evidence_;
  TraceLog* trace_ = nullptr;

  std::map<ServiceKey, double> rates_at_last_plan_;
  double last_analysis_clock_ = -1.0;
  bool pending_drift_trigger_ = false;
  bool pending_content_trigger_ = false;
  bool pending_requirement_trigger_ = false;
  bool hour_tick_pending_ = false;
};

/// Prunes one operation's alternative lists for sampling engines: keeps the
/// `keep` options with lowest estimated chain failure probability plus the
/// `keep` cheapest, in original enumeration order.
std::vector<std::vector<int>> prune_options(
    const std::vector<std::vector<int>>& options,
    const std::map<ServiceKey, double>& rates,
    const std::map<ServiceKey, double>& costs, ServiceType type, int keep);

}  // namespace tas

#endif  // TAS_MAPE_HPP
