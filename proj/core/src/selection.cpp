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

#include "tas/selection.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

namespace tas {

std::string to_string(ServiceType t) {
  switch (t) {
    case ServiceType::Alarm:
      return "alarm";
    case ServiceType::MedicalAnalysis:
      return "medical_analysis";
    case ServiceType::Drug:
      return "drug";
    case ServiceType::InformRelatives:
      return "inform_relatives";
  }
  return "unknown";
}

char type_letter(ServiceType t) {
  switch (t) {
    case ServiceType::Alarm:
      return 'A';
    case ServiceType::MedicalAnalysis:
      return 'M';
    case ServiceType::Drug:
      return 'D';
    case ServiceType::InformRelatives:
      return 'I';
  }
  return '?';
}

std::string Configuration::digest() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [type, ids] : binding) {
    if (!first) out << '|';
    first = false;
    out << type_letter(type) << (is_parallel(type) ? "*" : "") << ':';
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i) out << ',';
      out << ids[i];
    }
  }
  return out.str();
}

ValidationResult validate_registry(const ServiceRegistry& registry,
                                   const WorkflowSpec& workflow) {
  ValidationResult result;

  for (const auto& s : registry.services) {
    if (s.id <= 0)
      result.fail("service id " + std::to_string(s.id) + " is not positive");
    if (!(s.advertised_failure_rate >= 0.0 && s.advertised_failure_rate <= 1.0))
      result.fail("service " + to_string(s.type) + "/" + std::to_string(s.id) +
                  ": failure rate outside [0,1]");
    if (!(s.cost >= 0.0))
      result.fail("service " + to_string(s.type) + "/" + std::to_string(s.id) +
                  ": negative cost");
  }

  std::set<ServiceKey> seen;
  for (const auto& s : registry.services) {
    if (!seen.insert(s.key()).second)
      result.fail("duplicate id " + std::to_string(s.id) + " within type " +
                  to_string(s.type));
  }

  auto count_type = [&](ServiceType t) {
    std::size_t n = 0;
    for (const auto& s : registry.services)
      if (s.type == t) ++n;
    return n;
  };
  if (count_type(ServiceType::Alarm) < 2)
    result.fail("Alarm requires >=2 instances");
  if (count_type(ServiceType::MedicalAnalysis) < 1)
    result.fail("MedicalAnalysis requires >=1 instance");
  if (count_type(ServiceType::Drug) < 1)
    result.fail("Drug requires >=1 instance");
  if (workflow.inform_relatives_enabled &&
      count_type(ServiceType::InformRelatives) < 1)
    result.fail("InformRelatives enabled but no instance registered");

  return result;
}

int select_s1(const std::vector<ConcreteService>& alarm_services) {
  if (alarm_services.empty())
    throw std::invalid_argument("select_s1: empty service list");
  const ConcreteService* best = &alarm_services.front();
  for (const auto& s : alarm_services) {
    if (s.advertised_failure_rate < best->advertised_failure_rate ||
        (s.advertised_failure_rate == best->advertised_failure_rate &&
         (s.cost < best->cost || (s.cost == best->cost && s.id < best->id))))
      best = &s;
  }
  return best->id;
}

std::optional<S2Selection> select_s2(const std::vector<ConcreteService>& medical,
                                     const std::vector<ConcreteService>& alarm,
                                     double x) {
  if (medical.empty() || alarm.empty())
    throw std::invalid_argument("select_s2: empty service list");
  std::optional<S2Selection> best;
  for (const auto& m : medical) {
    for (const auto& a : alarm) {
      if (m.advertised_failure_rate + a.advertised_failure_rate > x) continue;
      const double cost = m.cost + a.cost;
      if (!best || cost < best->cost_sum ||
          (cost == best->cost_sum &&
           std::pair(m.id, a.id) < std::pair(best->medical_id, best->alarm_id)))
        best = S2Selection{m.id, a.id, cost};
    }
  }
  return best;
}

namespace {

void extend_chains(const std::vector<ConcreteService>& services, int depth,
                   std::vector<int>& current,
                   std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == depth) return;
  for (const auto& s : services) {
    if (std::find(current.begin(), current.end(), s.id) != current.end())
      continue;
    current.push_back(s.id);
    out.push_back(current);
    extend_chains(services, depth, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> enumerate_chains(
    const std::vector<ConcreteService>& services, int retry_depth) {
  if (retry_depth < 1)
    throw std::invalid_argument("retry_depth must be >= 1");
  // Singletons first (registry order), then by length, lexicographic by
  // registry position within each length.
  std::vector<std::vector<int>> out;
  for (int len = 1; len <= retry_depth; ++len) {
    std::vector<std::vector<int>> of_len;
    std::vector<int> current;
    extend_chains(services, len, current, of_len);
    for (auto& c : of_len)
      if (static_cast<int>(c.size()) == len) out.push_back(std::move(c));
  }
  return out;
}

std::vector<Configuration> enumerate_configurations(
    const ServiceRegistry& registry, const WorkflowSpec& workflow,
    int retry_depth) {
  auto validation = validate_registry(registry, workflow);
  if (!validation)
    throw std::invalid_argument("enumerate_configurations: invalid registry: " +
                                (validation.errors.empty()
                                     ? std::string("unknown")
                                     : validation.errors.front()));

  std::vector<ServiceType> ops(std::begin(kCoreServiceTypes),
                               std::end(kCoreServiceTypes));
  if (workflow.inform_relatives_enabled)
    ops.push_back(ServiceType::InformRelatives);

  std::vector<std::vector<std::vector<int>>> per_op;
  for (auto op : ops)
    per_op.push_back(enumerate_chains(registry.of_type(op), retry_depth));

  std::vector<Configuration> out;
  std::vector<std::size_t> index(ops.size(), 0);
  while (true) {
    Configuration config;
    for (std::size_t i = 0; i < ops.size(); ++i)
      config.binding[ops[i]] = per_op[i][index[i]];
    out.push_back(std::move(config));

    // Odometer increment, last operation fastest.
    std::size_t pos = ops.size();
    while (pos > 0) {
      --pos;
      if (++index[pos] < per_op[pos].size()) break;
      index[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

std::uint64_t count_configurations(const ServiceRegistry& registry,
                                   const WorkflowSpec& workflow,
                                   int retry_depth) {
  std::vector<ServiceType> ops(std::begin(kCoreServiceTypes),
                               std::end(kCoreServiceTypes));
  if (workflow.inform_relatives_enabled)
    ops.push_back(ServiceType::InformRelatives);
  std::uint64_t total = 1;
  for (auto op : ops) {
    const std::uint64_t n = registry.of_type(op).size();
    std::uint64_t options = 0;
    std::uint64_t perm = 1;
    for (int k = 1; k <= retry_depth && static_cast<std::uint64_t>(k) <= n; ++k) {
      perm *= n - static_cast<std::uint64_t>(k) + 1;
      options += perm;
    }
    total *= options;
  }
  return total;
}

}  // namespace tas
