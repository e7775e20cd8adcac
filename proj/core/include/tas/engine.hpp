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

#ifndef TAS_ENGINE_HPP
#define TAS_ENGINE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tas/types.hpp"

namespace tas {

/// Model parameters an assurance engine evaluates against: per-service
/// failure probabilities and costs plus the two branch splits. These come
/// from runtime estimates (or advertised profiles), never from the hidden
/// true world.
struct ModelParams {
  std::map<ServiceKey, double> failure_rate;
  std::map<ServiceKey, double> cost;
  double p_vital = 0.75;
  double p_drug = 0.66;

  double p_emergency() const { return 1.0 - p_vital; }
  double p_alarm() const { return 1.0 - p_drug; }

  static ModelParams from_registry(const ServiceRegistry& registry,
                                   const WorkflowSpec& workflow);

  /// Short stable digest for evidence-log records.
  std::string digest() const;
};

enum class Compliance : std::uint8_t { Compliant, Violating, Undecided };

std::string to_string(Compliance c);

struct Verdict {
  double failure_prob = 0.0;
  double expected_cost = 0.0;
  Compliance compliant = Compliance::Undecided;
  // Evidence metadata: what produced the verdict and at what cost.
  std::string method;
  std::uint64_t evidence_volume = 0;  // model states (rqv) or samples (rsmc)
  std::uint64_t wall_micros = 0;
};

/// One bound alternative with its parameters resolved; the allocation-free
/// form used on hot verification paths.
struct BoundService {
  ServiceKey key{};
  double failure_rate = 0.0;
  double cost = 0.0;
};

struct ResolvedChain {
  std::vector<BoundService> services;
  bool parallel = false;
};

struct ResolvedConfig {
  ResolvedChain medical;
  ResolvedChain alarm;
  ResolvedChain drug;
  ResolvedChain inform;  // empty when InformRelatives is not bound
  double p_vital = 0.75;
  double p_drug = 0.66;
  bool has_inform() const { return !inform.services.empty(); }
};

/// Resolves a configuration's ids against the parameter maps. Throws
/// std::invalid_argument when an id has no failure-rate or cost entry.
ResolvedConfig resolve_config(const Configuration& config,
                              const ModelParams& params);

class AssuranceEngine {
 public:
  virtual ~AssuranceEngine() = default;

  virtual std::string name() const = 0;

  Verdict verify(const WorkflowSpec& workflow, const Configuration& config,
                 const ModelParams& params, const RequirementSpec& requirements);

  /// Hot-path entry: configuration already resolved, no id lookups.
  virtual Verdict verify_resolved(const ResolvedConfig& config,
                                  const RequirementSpec& requirements) = 0;
};

}  // namespace tas

#endif  // TAS_ENGINE_HPP
