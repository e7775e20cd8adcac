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

#include "tas/smc.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "tas/exact.hpp"

namespace tas {

namespace {
constexpr std::uint64_t kSampleBlock = 4096;
}

void SmcStrategy::validate() const {
  if (!(approximation > 0.0 && approximation < 1.0))
    throw std::invalid_argument("SMC approximation E outside (0,1)");
  if (!(error_prob > 0.0 && error_prob < 1.0))
    throw std::invalid_argument("SMC error probability A outside (0,1)");
}

std::uint64_t required_samples(double approximation, double error_prob) {
  SmcStrategy{approximation, error_prob, 0}.validate();
  return static_cast<std::uint64_t>(
      std::ceil(std::log(2.0 / error_prob) /
                (2.0 * approximation * approximation)));
}

std::pair<bool, double> simulate_walk(const MarkovModel<double>& model,
                                      RngStream& gen) {
  std::int32_t s = model.entry;
  double cost = 0.0;
  while (!model.absorbing(s)) {
    const auto& state = model.states[s];
    const double u = uniform01(gen);
    double cum = 0.0;
    std::int32_t chosen = state.n_edges - 1;  // guard against rounding
    for (std::int32_t e = 0; e < state.n_edges; ++e) {
      cum += state.edges[e].prob;
      if (u < cum) {
        chosen = e;
        break;
      }
    }
    cost += state.edges[chosen].reward;
    s = state.edges[chosen].to;
  }
  return {s == MarkovModel<double>::kFailure, cost};
}

std::pair<bool, double> simulate_once(const WorkflowSpec& workflow,
                                      const Configuration& config,
                                      const ModelParams& params,
                                      RngStream& gen) {
  const MarkovModel<double> model = build_chain(workflow, config, params);
  return simulate_walk(model, gen);
}

namespace {

SmcEstimate run_samples(const MarkovModel<double>& model,
                        const SmcStrategy& strategy) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t n =
      required_samples(strategy.approximation, strategy.error_prob);
  std::uint64_t failures = 0;
  double cost_sum = 0.0;
  for (std::uint64_t block = 0; block * kSampleBlock < n; ++block) {
    RngStream gen(derive_seed(strategy.seed, block));
    const std::uint64_t hi = std::min(n, (block + 1) * kSampleBlock);
    for (std::uint64_t i = block * kSampleBlock; i < hi; ++i) {
      auto [failed, cost] = simulate_walk(model, gen);
      failures += failed ? 1 : 0;
      cost_sum += cost;
    }
  }
  SmcEstimate est;
  est.p_hat = static_cast<double>(failures) / static_cast<double>(n);
  est.cost_hat = cost_sum / static_cast<double>(n);
  est.samples = n;
  est.strategy = strategy;
  est.wall_micros = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::microseconds>(
          std::chrono::steady_clock::now() - start)
          .count());
  return est;
}

}  // namespace

SmcEstimate estimate(const WorkflowSpec& workflow, const Configuration& config,
                     const ModelParams& params, const SmcStrategy& strategy) {
  strategy.validate();
  const MarkovModel<double> model = build_chain(workflow, config, params);
  return run_samples(model, strategy);
}

SmcEstimate estimate_resolved(const ResolvedConfig& config,
                              const SmcStrategy& strategy,
                              MarkovModel<double>* scratch) {
  strategy.validate();
  MarkovModel<double> local;
  MarkovModel<double>& model = scratch ? *scratch : local;
  build_chain_resolved(model, config);
  return run_samples(model, strategy);
}

Verdict verdict_smc(const SmcEstimate& est,
                    const RequirementSpec& requirements) {
  Verdict v;
  v.failure_prob = est.p_hat;
  v.expected_cost = est.cost_hat;
  v.method = "rsmc";
  v.evidence_volume = est.samples;
  v.wall_micros = est.wall_micros;

  const double e = est.strategy.approximation;
  if (est.p_hat + e <= requirements.max_failure_prob &&
      est.cost_hat <= requirements.max_avg_cost) {
    v.compliant = Compliance::Compliant;
  } else if (est.p_hat - e > requirements.max_failure_prob) {
    v.compliant = Compliance::Violating;
  } else {
    v.compliant = Compliance::Undecided;
  }
  return v;
}

Verdict SmcEngine::verify_resolved(const ResolvedConfig& config,
                                   const RequirementSpec& requirements) {
  // Per-candidate seed derived from the resolved identities and parameters,
  // so repeated verification of the same model is reproducible and the
  // result cannot depend on candidate evaluation order.
  std::uint64_t h = fnv1a(&config.p_vital, sizeof(double));
  h = fnv1a(&config.p_drug, sizeof(double), h);
  for (const auto* chain :
       {&config.medical, &config.alarm, &config.drug, &config.inform})
    for (const auto& s : chain->services) {
      // Field by field; whole-struct hashing would pick up padding bytes.
      const auto type = static_cast<unsigned char>(s.key.type);
      h = fnv1a(&type, sizeof(type), h);
      h = fnv1a(&s.key.id, sizeof(s.key.id), h);
      h = fnv1a(&s.failure_rate, sizeof(double), h);
    }
  SmcStrategy local = strategy_;
  local.seed = derive_seed(strategy_.seed, h);

  SmcEstimate est = estimate_resolved(config, local, &scratch_model_);
  return verdict_smc(est, requirements);
}

}  // namespace tas
