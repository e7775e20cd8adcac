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

#ifndef TAS_TRACE_HPP
#define TAS_TRACE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tas/engine.hpp"
#include "tas/scenario.hpp"

namespace tas {

/// One verification the controller requested; `batch` > 1 marks an
/// aggregated record covering a streamed exhaustive analysis.
struct VerificationRecord {
  double clock_hours = 0.0;
  std::string engine;
  std::string config_digest;
  Compliance result = Compliance::Undecided;
  double failure_prob = 0.0;
  double expected_cost = 0.0;
  std::uint64_t wall_micros = 0;
  std::uint64_t evidence_volume = 0;
  std::uint64_t batch = 1;
};

struct AdaptationRecord {
  double clock_hours = 0.0;
  std::string old_config;
  std::string new_config;
  bool degraded = false;
  bool noop = false;
  std::uint64_t latency_micros = 0;  // trigger decision -> execute complete
};

/// Scenario-S4 workflow extension bookkeeping.
struct IntegrationRecord {
  double clock_hours = 0.0;
  double event_time_hours = 0.0;
  double deadline_hours = 0.0;
  ServiceKey bound_service{};
};

/// Full per-episode audit record.
struct TraceLog {
  std::string scenario;
  std::uint64_t seed = 0;
  std::string engine;
  std::vector<InvocationOutcome> invocations;
  std::vector<VerificationRecord> verifications;
  std::vector<AdaptationRecord> adaptations;
  std::vector<IntegrationRecord> integrations;
  std::vector<double> refresh_times_hours;
  double wall_seconds = 0.0;  // real time spent running the episode
};

}  // namespace tas

#endif  // TAS_TRACE_HPP
