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

#ifndef TAS_TYPES_HPP
#define TAS_TYPES_HPP

#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tas {

/// Abstract service types of the tele-assistance workflow. InformRelatives
/// only appears in a registry after the corresponding availability event.
enum class ServiceType : std::uint8_t {
  Alarm = 0,
  MedicalAnalysis = 1,
  Drug = 2,
  InformRelatives = 3,
};

inline constexpr ServiceType kCoreServiceTypes[] = {
    ServiceType::MedicalAnalysis, ServiceType::Alarm, ServiceType::Drug};

std::string to_string(ServiceType t);
char type_letter(ServiceType t);

/// Service ids are unique per type, not globally; identity is (type, id).
struct ServiceKey {
  ServiceType type{};
  int id{};
  auto operator<=>(const ServiceKey&) const = default;
};

/// A third-party service instance as advertised in the registry.
struct ConcreteService {
  int id{};
  ServiceType type{};
  double advertised_failure_rate{};  // per-invocation failure probability
  double cost{};                     // euro per invocation

  ConcreteService() = default;
  ConcreteService(int id_, ServiceType type_, double rate, double cost_)
      : id(id_), type(type_), advertised_failure_rate(rate), cost(cost_) {
    if (id_ <= 0) throw std::invalid_argument("service id must be positive");
    if (!(rate >= 0.0 && rate <= 1.0))
      throw std::invalid_argument("failure rate outside [0,1]");
    if (!(cost_ >= 0.0)) throw std::invalid_argument("cost must be >= 0");
  }

  ServiceKey key() const { return {type, id}; }
};

struct ServiceRegistry {
  std::vector<ConcreteService> services;
  double last_refresh_hours = 0.0;

  std::vector<ConcreteService> of_type(ServiceType t) const {
    std::vector<ConcreteService> out;
    for (const auto& s : services)
      if (s.type == t) out.push_back(s);
    return out;
  }

  const ConcreteService* find(ServiceKey key) const {
    for (const auto& s : services)
      if (s.type == key.type && s.id == key.id) return &s;
    return nullptr;
  }

  bool has_type(ServiceType t) const {
    for (const auto& s : services)
      if (s.type == t) return true;
    return false;
  }
};

/// Branching structure of the workflow: vital-signs vs emergency requests,
/// and the drug vs alarm branch after a successful analysis.
struct WorkflowSpec {
  double p_vital = 0.75;
  double p_emergency = 0.25;
  double p_drug = 0.66;
  double p_alarm = 0.34;
  bool inform_relatives_enabled = false;

  void validate() const {
    auto check_split = [](double a, double b, const char* what) {
      if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0))
        throw std::invalid_argument(std::string(what) + " outside [0,1]");
      if (std::abs(a + b - 1.0) > 1e-12)
        throw std::invalid_argument(std::string(what) + " does not sum to 1");
    };
    check_split(p_vital, p_emergency, "request split");
    check_split(p_drug, p_alarm, "analysis split");
  }
};

/// Binding of each abstract operation to an ordered list of concrete
/// alternatives (retry order). An operation listed in `parallel_ops` invokes
/// all alternatives at once and is charged all of their costs.
struct Configuration {
  std::map<ServiceType, std::vector<int>> binding;
  std::vector<ServiceType> parallel_ops;

  const std::vector<int>* chain(ServiceType t) const {
    auto it = binding.find(t);
    return it == binding.end() ? nullptr : &it->second;
  }

  bool is_parallel(ServiceType t) const {
    for (auto p : parallel_ops)
      if (p == t) return true;
    return false;
  }

  bool operator==(const Configuration& other) const = default;

  /// Canonical digest, e.g. "A:2,4|M:2|D:1". Used in logs and reports.
  std::string digest() const;
};

struct RequirementSpec {
  double max_failure_prob = 0.02;  // R1
  double max_avg_cost = 8.0;       // R2
  std::optional<double> pair_budget_x;  // scenario-S2 threshold X

  void validate() const {
    if (!(max_failure_prob >= 0.0 && max_failure_prob <= 1.0))
      throw std::invalid_argument("max_failure_prob outside [0,1]");
    if (!(max_avg_cost >= 0.0))
      throw std::invalid_argument("max_avg_cost must be >= 0");
    if (pair_budget_x && !(*pair_budget_x >= 0.0 && *pair_budget_x <= 1.0))
      throw std::invalid_argument("pair_budget_x outside [0,1]");
  }
};

struct ValidationResult {
  bool ok = true;
  std::vector<std::string> errors;

  explicit operator bool() const { return ok; }
  void fail(std::string msg) {
    ok = false;
    errors.push_back(std::move(msg));
  }
};

}  // namespace tas

#endif  // TAS_TYPES_HPP
