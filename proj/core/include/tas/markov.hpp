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
//
// Discrete-time Markov model of one workflow invocation.
//
// State layout (documented, fixed): state 0 is Success, state 1 is Failure,
// both absorbing. Transient states are one per alternative attempt, built so
// that every transition points to a lower state index; the chain is acyclic
// by construction and both absorption probability and expected accumulated
// reward fall out of a single ascending sweep, with no iteration error.
//
// At retry depth 1 with the three core operations this gives 2 absorbing +
// 5 transient states: entry, M-attempt, D-attempt, A-attempt (vital path),
// A-attempt (emergency path).
//
// The transition-probability type is a template parameter: double for
// numeric evaluation, a polynomial for the parametric precomputation mode.

#ifndef TAS_MARKOV_HPP
#define TAS_MARKOV_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tas {

template <typename P>
struct Transition {
  std::int32_t to = 0;
  P prob{};
  double reward = 0.0;  // cost charged when the transition is taken
};

template <typename P>
struct MarkovState {
  std::array<Transition<P>, 3> edges{};
  std::int32_t n_edges = 0;
};

template <typename P>
struct MarkovModel {
  static constexpr std::int32_t kSuccess = 0;
  static constexpr std::int32_t kFailure = 1;

  std::vector<MarkovState<P>> states;
  std::int32_t entry = 0;
  std::vector<std::string> labels;  // filled only when built with labeling

  bool absorbing(std::int32_t s) const { return s == kSuccess || s == kFailure; }
};

/// One operation's alternatives with resolved parameters, probability-typed.
template <typename P>
struct ChainSpec {
  struct Attempt {
    P failure_rate{};
    double cost = 0.0;
  };
  std::vector<Attempt> attempts;
  bool parallel = false;
  bool empty() const { return attempts.empty(); }
};

template <typename P>
struct SplitSpec {
  P vital{};
  P emergency{};
  P drug{};
  P alarm{};
};

namespace detail {

template <typename P>
struct SuccessTarget {
  std::int32_t state;
  P weight;
};

// Appends the attempt chain of one operation. `on_success` lists the states
// reached after a successful invocation with their branch weights (weights
// sum to one); `on_exhaust` is where the walk goes when every alternative
// failed. Returns the index of the first attempt state.
template <typename P>
std::int32_t append_chain(MarkovModel<P>& model, const ChainSpec<P>& chain,
                          const std::vector<SuccessTarget<P>>& on_success,
                          std::int32_t on_exhaust, const P& one,
                          const char* label) {
  if (chain.attempts.empty())
    throw std::invalid_argument("markov: empty alternative chain");
  if (on_success.size() > 2)
    throw std::invalid_argument("markov: too many success branches");

  const bool labeled = !model.labels.empty();

  if (chain.parallel) {
    // All alternatives invoked at once: one state, failure iff all fail,
    // full cost of the batch charged either way.
    P all_fail = chain.attempts.front().failure_rate;
    double batch_cost = chain.attempts.front().cost;
    for (std::size_t i = 1; i < chain.attempts.size(); ++i) {
      all_fail = all_fail * chain.attempts[i].failure_rate;
      batch_cost += chain.attempts[i].cost;
    }
    MarkovState<P> state;
    for (const auto& target : on_success)
      state.edges[state.n_edges++] = {target.state,
                                      (one - all_fail) * target.weight,
                                      batch_cost};
    state.edges[state.n_edges++] = {on_exhaust, all_fail, batch_cost};
    model.states.push_back(std::move(state));
    if (labeled)
      model.labels.push_back(std::string(label) + "-parallel");
    return static_cast<std::int32_t>(model.states.size()) - 1;
  }

  // Sequential retries, last attempt first so successors already exist.
  std::int32_t next_on_fail = on_exhaust;
  for (std::size_t i = chain.attempts.size(); i-- > 0;) {
    const auto& attempt = chain.attempts[i];
    MarkovState<P> state;
    for (const auto& target : on_success)
      state.edges[state.n_edges++] = {target.state,
                                      (one - attempt.failure_rate) * target.weight,
                                      attempt.cost};
    state.edges[state.n_edges++] = {next_on_fail, attempt.failure_rate,
                                    attempt.cost};
    model.states.push_back(std::move(state));
    if (labeled)
      model.labels.push_back(std::string(label) + "-attempt" +
                             std::to_string(i));
    next_on_fail = static_cast<std::int32_t>(model.states.size()) - 1;
  }
  return next_on_fail;
}

}  // namespace detail

/// Builds the invocation model into `model` (reused storage is cleared).
/// `inform` may be empty; when present it runs after every successful alarm
/// invocation and its exhaustion leads to Success, never Failure.
template <typename P>
void build_markov(MarkovModel<P>& model, const SplitSpec<P>& splits,
                  const ChainSpec<P>& medical, const ChainSpec<P>& alarm,
                  const ChainSpec<P>& drug, const ChainSpec<P>& inform,
                  const P& one, bool labeled = false) {
  model.states.clear();
  model.labels.clear();
  model.states.resize(2);  // Success, Failure
  if (labeled) model.labels = {"Success", "Failure"};

  using Target = detail::SuccessTarget<P>;
  const std::vector<Target> to_success{{MarkovModel<P>::kSuccess, one}};

  std::int32_t alarm_success = MarkovModel<P>::kSuccess;
  if (!inform.empty())
    alarm_success = detail::append_chain(model, inform, to_success,
                                         MarkovModel<P>::kSuccess, one, "I");

  const std::vector<Target> alarm_targets{{alarm_success, one}};
  const std::int32_t drug_entry =
      detail::append_chain(model, drug, to_success, MarkovModel<P>::kFailure,
                           one, "D");
  const std::int32_t alarm_vital =
      detail::append_chain(model, alarm, alarm_targets,
                           MarkovModel<P>::kFailure, one, "A-vital");
  const std::int32_t alarm_emergency =
      detail::append_chain(model, alarm, alarm_targets,
                           MarkovModel<P>::kFailure, one, "A-emergency");

  const std::vector<Target> medical_targets{{drug_entry, splits.drug},
                                            {alarm_vital, splits.alarm}};
  const std::int32_t medical_entry =
      detail::append_chain(model, medical, medical_targets,
                           MarkovModel<P>::kFailure, one, "M");

  MarkovState<P> entry;
  entry.edges[entry.n_edges++] = {medical_entry, splits.vital, 0.0};
  entry.edges[entry.n_edges++] = {alarm_emergency, splits.emergency, 0.0};
  model.states.push_back(std::move(entry));
  if (labeled) model.labels.push_back("entry");
  model.entry = static_cast<std::int32_t>(model.states.size()) - 1;
}

template <typename P>
struct AbsorptionResult {
  P failure;
  P cost;
};

/// Absorption probability into Failure and expected accumulated reward,
/// via one ascending sweep (every transition points to a lower index).
template <typename P>
AbsorptionResult<P> solve_absorption(const MarkovModel<P>& model, const P& zero,
                                     const P& one) {
  const std::size_t n = model.states.size();
  std::vector<P> fail(n, zero);
  std::vector<P> cost(n, zero);
  fail[MarkovModel<P>::kFailure] = one;
  for (std::size_t s = 2; s < n; ++s) {
    const auto& state = model.states[s];
    P f = zero;
    P c = zero;
    for (std::int32_t e = 0; e < state.n_edges; ++e) {
      const auto& edge = state.edges[e];
      f = f + edge.prob * fail[edge.to];
      c = c + edge.prob * cost[edge.to] + edge.prob * edge.reward;
    }
    fail[s] = std::move(f);
    cost[s] = std::move(c);
  }
  return {fail[model.entry], cost[model.entry]};
}

// Numeric specialization used on hot paths: fused sweep over stack-friendly
// scratch buffers, no per-call allocation when `scratch` is reused.
struct NumericSolveScratch {
  std::vector<double> fail;
  std::vector<double> cost;
};

inline AbsorptionResult<double> solve_absorption(
    const MarkovModel<double>& model, NumericSolveScratch& scratch) {
  const std::size_t n = model.states.size();
  scratch.fail.assign(n, 0.0);
  scratch.cost.assign(n, 0.0);
  scratch.fail[MarkovModel<double>::kFailure] = 1.0;
  for (std::size_t s = 2; s < n; ++s) {
    const auto& state = model.states[s];
    double f = 0.0;
    double c = 0.0;
    for (std::int32_t e = 0; e < state.n_edges; ++e) {
      const auto& edge = state.edges[e];
      f += edge.prob * scratch.fail[edge.to];
      c += edge.prob * (edge.reward + scratch.cost[edge.to]);
    }
    scratch.fail[s] = f;
    scratch.cost[s] = c;
  }
  return {scratch.fail[model.entry], scratch.cost[model.entry]};
}

}  // namespace tas

#endif  // TAS_MARKOV_HPP
