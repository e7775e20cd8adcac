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

#ifndef TAS_EXACT_HPP
#define TAS_EXACT_HPP

#include <string>
#include <unordered_map>

#include "tas/engine.hpp"
#include "tas/markov.hpp"
#include "tas/polynomial.hpp"

namespace tas {

/// Builds the invocation model with numeric parameters. The workflow decides
/// whether InformRelatives participates; probabilities and costs come from
/// `params`, resolved through `config`.
MarkovModel<double> build_chain(const WorkflowSpec& workflow,
                                const Configuration& config,
                                const ModelParams& params,
                                bool labeled = false);

void build_chain_resolved(MarkovModel<double>& model,
                          const ResolvedConfig& config, bool labeled = false);

/// Exact absorption probability into Failure.
double eval_failure_probability(const MarkovModel<double>& model);
double eval_failure_probability(const WorkflowSpec& workflow,
                                const Configuration& config,
                                const ModelParams& params);

/// Exact expected accumulated cost until absorption. Failed attempts are
/// charged; operations past a workflow failure are never reached.
double eval_expected_cost(const MarkovModel<double>& model);
double eval_expected_cost(const WorkflowSpec& workflow,
                          const Configuration& config,
                          const ModelParams& params);

struct ParametricPair {
  PolynomialFunction failure;
  PolynomialFunction cost;
};

/// Precomputes both quantities as exact multivariate polynomials in the
/// bound services' failure rates and the two split parameters ("p_vital",
/// "p_drug", "f_A2", ...). Costs are constants taken from `params`; failure
/// rates in `params` are ignored.
ParametricPair precompute_parametric(const WorkflowSpec& workflow,
                                     const Configuration& config,
                                     const ModelParams& params);

/// Numeric evaluation of a precomputed polynomial at a parameter point.
/// Throws std::invalid_argument when a variable has no binding.
double eval_parametric(const PolynomialFunction& poly,
                       const ModelParams& params);

Compliance check_requirements(double failure_prob, double expected_cost,
                              const RequirementSpec& requirements);

/// Exact verdict; never Undecided.
Verdict verdict_exact(double failure_prob, double expected_cost,
                      const RequirementSpec& requirements);
Verdict verdict_exact(const WorkflowSpec& workflow, const Configuration& config,
                      const ModelParams& params,
                      const RequirementSpec& requirements);

/// Textual transition list "state, successor, probability, reward", one line
/// per transition, for cross-checking with external tools. Labels are
/// emitted as comment lines when the model was built with labeling.
std::string export_transition_list(const MarkovModel<double>& model);

/// The RQV engine: direct model build plus exact evaluation.
class ExactEngine final : public AssuranceEngine {
 public:
  std::string name() const override { return "rqv"; }
  Verdict verify_resolved(const ResolvedConfig& config,
                          const RequirementSpec& requirements) override;

 private:
  MarkovModel<double> scratch_model_;
  NumericSolveScratch scratch_solve_;
};

/// The RQV engine in parametric precomputation mode: polynomials are derived
/// once per configuration shape and instantiated cheaply afterwards.
class ParametricExactEngine final : public AssuranceEngine {
 public:
  std::string name() const override { return "rqv-parametric"; }
  Verdict verify_resolved(const ResolvedConfig& config,
                          const RequirementSpec& requirements) override;

  std::size_t cache_size() const { return cache_.size(); }

 private:
  std::unordered_map<std::string, ParametricPair> cache_;
};

}  // namespace tas

#endif  // TAS_EXACT_HPP
