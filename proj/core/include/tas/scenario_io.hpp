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

#ifndef TAS_SCENARIO_IO_HPP
#define TAS_SCENARIO_IO_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "tas/scenario.hpp"

namespace tas {

/// Raised on malformed scenario/suite files. Strict mode: unknown fields are
/// an error, as are missing required ones.
class ScenarioParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ScenarioSpec parse_scenario_text(const std::string& text);
ScenarioSpec parse_scenario(const std::string& path);

/// Canonical serialization: fixed field order, two-space indent, trailing
/// newline. parse/serialize round-trips to equivalent specs and identical
/// bytes once canonicalized.
std::string serialize_scenario(const ScenarioSpec& scenario);
void write_scenario(const ScenarioSpec& scenario, const std::string& path);

/// Suite file: {"name": ..., "scenarios": [...]} where each entry is either
/// a path (relative to the suite file) or an inline scenario object.
std::vector<ScenarioSpec> parse_suite(const std::string& path);

}  // namespace tas

#endif  // TAS_SCENARIO_IO_HPP
