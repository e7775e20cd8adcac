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

#ifndef TAS_SELECTION_HPP
#define TAS_SELECTION_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "tas/types.hpp"

namespace tas {

/// Checks every registry invariant against the given workflow: at least one
/// instance per referenced type (two for Alarm), unique ids within a type,
/// probabilities and costs in range. Each violation is reported with the
/// offending service id.
ValidationResult validate_registry(const ServiceRegistry& registry,
                                   const WorkflowSpec& workflow);

/// Static selection rule of scenario S1: the alarm service with minimal
/// advertised failure rate; ties broken by minimal cost, then smallest id.
/// Throws std::invalid_argument on an empty list.
int select_s1(const std::vector<ConcreteService>& alarm_services);

struct S2Selection {
  int medical_id{};
  int alarm_id{};
  double cost_sum{};
};

/// Static selection rule of scenario S2: the (medical, alarm) pair with
/// minimal cost sum among pairs whose failure-rate sum is <= X; ties broken
/// lexicographically by (medical id, alarm id). Empty optional when no pair
/// is feasible.
std::optional<S2Selection> select_s2(
    const std::vector<ConcreteService>& medical,
    const std::vector<ConcreteService>& alarm, double x);

/// All ordered arrangements of 1..retry_depth distinct services of one type,
/// in deterministic enumeration order: singletons in registry order, then
/// longer arrangements lexicographically by registry position.
std::vector<std::vector<int>> enumerate_chains(
    const std::vector<ConcreteService>& services, int retry_depth);

/// Every configuration binding the three core operations (and, when the
/// workflow has it enabled, InformRelatives) to such arrangements.
/// Enumeration order: MedicalAnalysis varies slowest, then Alarm, then Drug.
std::vector<Configuration> enumerate_configurations(
    const ServiceRegistry& registry, const WorkflowSpec& workflow,
    int retry_depth);

/// Closed-form count of enumerate_configurations without materializing it:
/// product over operations of sum_{k=1..depth} P(n, k).
std::uint64_t count_configurations(const ServiceRegistry& registry,
                                   const WorkflowSpec& workflow,
                                   int retry_depth);

}  // namespace tas

#endif  // TAS_SELECTION_HPP
