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

#ifndef TAS_SMC_HPP
#define TAS_SMC_HPP

#include <cstdint>
#include <utility>

#include "tas/engine.hpp"
#include "tas/markov.hpp"
#include "tas/rng.hpp"

namespace tas {

/// Sampling strategy: the estimate p_hat lands within [p-E, p+E] with
/// probability at least 1-A.
struct SmcStrategy {
  double approximation = 0.05;  // E
  double error_prob = 0.05;     // A
  std::uint64_t seed = 0;

  void validate() const;
};

struct SmcEstimate {
  double p_hat = 0.0;
  double cost_hat = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t wall_micros = 0;
  SmcStrategy strategy;
};

/// Hoeffding/Okamoto sample bound: N = ceil(ln(2/A) / (2 E^2)).
std::uint64_t required_samples(double approximation, double error_prob);

/// One probabilistic walk through the invocation model; same semantics as
/// the exact engine's chain, driven by the supplied parameters (never the
/// hidden true world). Returns (workflow failed, accumulated cost).
std::pair<bool, double> simulate_walk(const MarkovModel<double>& model,
                                      RngStream& gen);

std::pair<bool, double> simulate_once(const WorkflowSpec& workflow,
                                      const Configuration& config,
                                      const ModelParams& params,
                                      RngStream& gen);

/// Runs exactly required_samples(E, A) walks. Samples are drawn in fixed
/// blocks with block-derived substream seeds, so the result is independent
/// of how blocks would be distributed across workers.
SmcEstimate estimate(const WorkflowSpec& workflow, const Configuration& config,
                     const ModelParams& params, const SmcStrategy& strategy);

SmcEstimate estimate_resolved(const ResolvedConfig& config,
                              const SmcStrategy& strategy,
                              MarkovModel<double>* scratch = nullptr);

/// Verdict with the approximation interval taken into account: Compliant
/// only when the whole interval sits below the threshold, Violating when it
/// sits wholly above, Undecided otherwise. Cost is compared by point value.
Verdict verdict_smc(const SmcEstimate& est, const RequirementSpec& requirements);

/// The RSMC engine.
class SmcEngine final : public AssuranceEngine {
 public:
  explicit SmcEngine(SmcStrategy strategy) : strategy_(strategy) {
    strategy_.validate();
  }

  std::string name() const override { return "rsmc"; }
  const SmcStrategy& strategy() const { return strategy_; }

  Verdict verify_resolved(const ResolvedConfig& config,
                          const RequirementSpec& requirements) override;

 private:
  SmcStrategy strategy_;
  MarkovModel<double> scratch_model_;
};

}  // namespace tas

#endif  // TAS_SMC_HPP
