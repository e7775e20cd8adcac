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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tas/bench.hpp"
#include "tas/exact.hpp"
#include "tas/mape.hpp"
#include "tas/rng.hpp"
#include "tas/scenario_io.hpp"
#include "tas/selection.hpp"
#include "tas/simulator.hpp"
#include "tas/smc.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitRuntime = 3;

struct CliConfig {
  std::string scenario_path;
  std::string suite_path;
  std::vector<std::string> engines;
  std::vector<std::string> strategies;  // "E,A" pairs
  std::optional<std::uint64_t> seed;
  int reps = 3;
  std::string out_dir = "out";
  int workers = 1;
  std::string config_override;
  std::vector<int> sweep_sizes;
  bool export_model = false;
};

tas::ServiceType op_from_letter(char c) {
  switch (c) {
    case 'A':
      return tas::ServiceType::Alarm;
    case 'M':
      return tas::ServiceType::MedicalAnalysis;
    case 'D':
      return tas::ServiceType::Drug;
    case 'I':
      return tas::ServiceType::InformRelatives;
    default:
      throw std::invalid_argument(std::string("unknown operation letter: ") +
                                  c);
  }
}

// "--config M=2;A=2,4;D=1" overrides the scenario's initial binding.
tas::Configuration parse_config_override(const std::string& text) {
  tas::Configuration config;
  std::istringstream stream(text);
  std::string part;
  while (std::getline(stream, part, ';')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos || eq != 1)
      throw std::invalid_argument("bad --config fragment: " + part);
    std::vector<int> ids;
    std::istringstream id_stream(part.substr(eq + 1));
    std::string id;
    while (std::getline(id_stream, id, ',')) ids.push_back(std::stoi(id));
    if (ids.empty())
      throw std::invalid_argument("bad --config fragment: " + part);
    config.binding[op_from_letter(part[0])] = std::move(ids);
  }
  if (config.binding.empty())
    throw std::invalid_argument("--config is empty");
  return config;
}

tas::SmcStrategy parse_strategy(const std::string& text,
                                std::uint64_t seed) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("--strategy expects E,A");
  tas::SmcStrategy strategy;
  strategy.approximation = std::stod(text.substr(0, comma));
  strategy.error_prob = std::stod(text.substr(comma + 1));
  strategy.seed = seed;
  strategy.validate();
  return strategy;
}

std::uint64_t resolve_seed(const CliConfig& cli, const tas::ScenarioSpec& s) {
  if (cli.seed) return *cli.seed;
  if (const char* env = std::getenv("PAS_SEED")) return std::stoull(env);
  return s.seed;
}

// Expands the engine/strategy flags into bench engine configs. Each rsmc
// entry is crossed with every strategy (default 0.05, 0.05).
std::vector<tas::EngineConfig> build_engines(const CliConfig& cli,
                                             std::uint64_t seed) {
  std::vector<std::string> names = cli.engines;
  if (names.empty()) names = {"rqv", "rsmc"};
  bool any_rsmc = false;
  for (const auto& n : names) any_rsmc = any_rsmc || n == "rsmc";
  if (!cli.strategies.empty() && !any_rsmc)
    throw CLI::ValidationError(
        "--strategy applies to the rsmc engine only");

  std::vector<std::string> strategies = cli.strategies;
  if (strategies.empty()) strategies = {"0.05,0.05"};

  std::vector<tas::EngineConfig> engines;
  for (const auto& name : names) {
    if (name != "rsmc") {
      engines.push_back({name, {}});
      continue;
    }
    for (const auto& s : strategies)
      engines.push_back(
          {name, parse_strategy(s, tas::derive_seed(seed, 0x5EEDULL))});
  }
  return engines;
}

json trace_summary(const tas::TraceLog& trace) {
  json out;
  out["scenario"] = trace.scenario;
  out["engine"] = trace.engine;
  out["seed"] = trace.seed;
  out["invocations"] = trace.invocations.size();
  std::uint64_t failures = 0;
  for (const auto& o : trace.invocations) failures += o.workflow_failed;
  out["workflow_failures"] = failures;
  json verifications = json::array();
  for (const auto& v : trace.verifications) {
    json record;
    record["clock"] = v.clock_hours;
    record["engine"] = v.engine;
    record["configuration"] = v.config_digest;
    record["result"] = tas::to_string(v.result);
    record["p"] = v.failure_prob;
    record["cost"] = v.expected_cost;
    record["wall_micros"] = v.wall_micros;
    record["evidence_volume"] = v.evidence_volume;
    record["batch"] = v.batch;
    verifications.push_back(std::move(record));
  }
  out["verifications"] = std::move(verifications);
  json adaptations = json::array();
  for (const auto& a : trace.adaptations) {
    json record;
    record["clock"] = a.clock_hours;
    record["old"] = a.old_config;
    record["new"] = a.new_config;
    record["degraded"] = a.degraded;
    record["noop"] = a.noop;
    record["latency_micros"] = a.latency_micros;
    adaptations.push_back(std::move(record));
  }
  out["adaptations"] = std::move(adaptations);
  json integrations = json::array();
  for (const auto& i : trace.integrations) {
    json record;
    record["clock"] = i.clock_hours;
    record["deadline_hours"] = i.deadline_hours;
    record["service"] = tas::to_string(i.bound_service.type) + "/" +
                        std::to_string(i.bound_service.id);
    integrations.push_back(std::move(record));
  }
  out["integrations"] = std::move(integrations);
  out["refresh_times_hours"] = trace.refresh_times_hours;
  out["wall_seconds"] = trace.wall_seconds;
  return out;
}

int cmd_verify(const CliConfig& cli) {
  if (cli.scenario_path.empty())
    throw CLI::ValidationError("verify requires --scenario");
  tas::ScenarioSpec scenario = tas::parse_scenario(cli.scenario_path);
  scenario.seed = resolve_seed(cli, scenario);

  tas::Configuration config = cli.config_override.empty()
                                  ? scenario.initial_config
                                  : parse_config_override(cli.config_override);
  const auto engines = build_engines(cli, scenario.seed);
  if (engines.size() != 1)
    throw CLI::ValidationError("verify needs exactly one engine/strategy");

  tas::ModelParams params =
      tas::ModelParams::from_registry(scenario.initial_registry,
                                      scenario.workflow);
  auto engine = tas::make_engine(engines.front());
  const tas::Verdict verdict = engine->verify(scenario.workflow, config,
                                              params, scenario.requirements);

  std::cout << "engine:            " << verdict.method << "\n"
            << "configuration:     " << config.digest() << "\n";
  if (engines.front().name == "rsmc") {
    const double e = engines.front().strategy.approximation;
    std::cout << "failure estimate:  " << verdict.failure_prob << " +- " << e
              << "\n";
  } else {
    std::cout << "failure prob:      " << verdict.failure_prob << "\n";
  }
  std::cout << "expected cost:     " << verdict.expected_cost << "\n"
            << "verdict:           " << tas::to_string(verdict.compliant)
            << " against (p <= " << scenario.requirements.max_failure_prob
            << ", cost <= " << scenario.requirements.max_avg_cost << ")\n"
            << "evidence volume:   " << verdict.evidence_volume << "\n";

  if (cli.export_model) {
    const auto model = tas::build_chain(scenario.workflow, config, params,
                                        /*labeled=*/true);
    std::cout << "transition list:\n"
              << tas::export_transition_list(model);
  }
  return kExitOk;
}

int cmd_run(const CliConfig& cli) {
  if (cli.scenario_path.empty())
    throw CLI::ValidationError("run requires --scenario");
  tas::ScenarioSpec scenario = tas::parse_scenario(cli.scenario_path);
  scenario.seed = resolve_seed(cli, scenario);
  const auto engines = build_engines(cli, scenario.seed);
  if (engines.size() != 1)
    throw CLI::ValidationError("run needs exactly one engine/strategy");

  std::filesystem::create_directories(cli.out_dir);
  auto engine = tas::make_engine(engines.front());
  tas::MapeController controller(scenario, *engine);
  controller.evidence().attach_file(
      (std::filesystem::path(cli.out_dir) / "evidence.jsonl").string());
  const tas::TraceLog trace = tas::run_episode(scenario, controller);

  std::ofstream trace_out(std::filesystem::path(cli.out_dir) / "trace.json");
  trace_out << trace_summary(trace).dump(2) << "\n";

  std::uint64_t failures = 0;
  for (const auto& o : trace.invocations) failures += o.workflow_failed;
  std::cout << "episode complete: " << trace.invocations.size()
            << " invocations, " << failures << " workflow failures, "
            << trace.adaptations.size() << " adaptation decisions\n"
            << "artifacts in " << cli.out_dir << "\n";
  return kExitOk;
}

int cmd_bench(const CliConfig& cli) {
  std::vector<tas::ScenarioSpec> suite;
  if (!cli.suite_path.empty())
    suite = tas::parse_suite(cli.suite_path);
  else if (!cli.scenario_path.empty())
    suite = {tas::parse_scenario(cli.scenario_path)};
  else
    throw CLI::ValidationError("bench requires --suite or --scenario");

  for (auto& scenario : suite) scenario.seed = resolve_seed(cli, scenario);
  const auto engines = build_engines(cli, suite.front().seed);

  tas::BenchmarkReport report =
      tas::run_suite(suite, engines, cli.reps, cli.workers);
  if (!cli.sweep_sizes.empty())
    report.scalability =
        tas::scalability_sweep(suite.front(), cli.sweep_sizes, engines);
  tas::emit_report(report, cli.out_dir);
  std::cout << "benchmark complete: " << report.episodes.size()
            << " episodes, artifacts in " << cli.out_dir << "\n";
  return kExitOk;
}

int cmd_report(const CliConfig& cli) {
  const auto path = std::filesystem::path(cli.out_dir) / "report.json";
  tas::BenchmarkReport report = tas::load_report(path.string());
  tas::emit_report(report, cli.out_dir);
  std::cout << "report regenerated in " << cli.out_dir << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tele Assistance System workbench"};
  app.require_subcommand(1);

  CliConfig cli;
  auto add_common = [&cli](CLI::App* cmd) {
    cmd->add_option("--scenario", cli.scenario_path, "Scenario JSON file");
    cmd->add_option("--engine", cli.engines,
                    "Engine: rqv, rqv-parametric, rsmc (repeatable)")
        ->check(CLI::IsMember({"rqv", "rqv-parametric", "rsmc"}));
    cmd->add_option("--strategy", cli.strategies,
                    "rsmc strategy E,A (repeatable)");
    cmd->add_option("--seed", cli.seed, "Seed override (also env PAS_SEED)");
    cmd->add_option("--out", cli.out_dir, "Output directory");
    cmd->add_option("--config", cli.config_override,
                    "Binding override, e.g. M=2;A=2,4;D=1");
  };

  auto* verify = app.add_subcommand("verify", "One-shot verification");
  add_common(verify);
  verify->add_flag("--export-model", cli.export_model,
                   "Print the Markov transition list");
  auto* run = app.add_subcommand("run", "Run one adaptive episode");
  add_common(run);
  auto* bench = app.add_subcommand("bench", "Run a benchmark suite");
  add_common(bench);
  bench->add_option("--suite", cli.suite_path, "Suite JSON file");
  bench->add_option("--reps", cli.reps, "Repetitions per (scenario, engine)")
      ->check(CLI::PositiveNumber);
  bench->add_option("--workers", cli.workers, "Concurrent episodes")
      ->check(CLI::PositiveNumber);
  bench->add_option("--sweep-sizes", cli.sweep_sizes,
                    "Scalability sweep sizes (ascending)");
  auto* report = app.add_subcommand("report", "Regenerate report artifacts");
  report->add_option("--out", cli.out_dir, "Directory with report.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(cli);
    if (run->parsed()) return cmd_run(cli);
    if (bench->parsed()) return cmd_bench(cli);
    return cmd_report(cli);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const tas::ScenarioParseError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
