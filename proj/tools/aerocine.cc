/*
 * Copyright 2026 The Aerocine Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line entry point: run, compare and bench-map.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "aerocine/runner/commands.h"
#include "aerocine/runner/run_mode.h"
#include "aerocine/runner/scenario.h"

namespace {

constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

using aerocine::runner::ConfigError;

aerocine::runner::Scenario Load(const std::string& path,
                                const std::optional<int64_t>& seed) {
  aerocine::runner::Scenario scenario = aerocine::runner::LoadScenario(path);
  if (seed) {
    if (*seed < 0) throw ConfigError("--seed must be >= 0");
    scenario.seed = static_cast<uint64_t>(*seed);
  }
  return scenario;
}

template <typename F>
aerocine::runner::RunMode Parse(const std::string& flag, F&& parse) {
  try {
    return parse();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(flag + ": " + e.what());
  }
}

void PrintSummary(const aerocine::runner::RunReport& report) {
  const auto& a = report.aggregates;
  const auto& t = report.timing;
  std::printf(
      "cycles %d  avg cost %.6g  median cost %.6g  avg plan %.2f ms  "
      "max cycle %.2f ms  overruns %d  safety violations %d/%d\n",
      a.cycles, a.avg_cost, a.median_cost, t.avg_plan_ms, t.max_cycle_ms,
      t.budget_overruns, a.safety_violations, a.feasible_cycles);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Aerial cinematography planning toolkit"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir;
  std::optional<int64_t> seed;
  bool two_lane = false;

  CLI::App* run = app.add_subcommand("run", "Run one closed-loop scenario");
  std::string map_source = "online";
  std::string actor_source = "gt";
  bool dump_scans = false;
  run->add_option("--scenario", scenario_path, "Scenario JSON file")
      ->required();
  run->add_option("--mode", map_source, "Map source: online or gt-map");
  run->add_option("--actor", actor_source, "Actor source: gt, noisy:<amp>, kf");
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_flag("--two-lane", two_lane,
                "Overlap scan integration with planning");
  run->add_flag("--dump-scans", dump_scans, "Write scans.bin");

  CLI::App* compare =
      app.add_subcommand("compare", "Run a scenario in two modes");
  std::string mode_a;
  std::string mode_b;
  compare->add_option("--scenario", scenario_path, "Scenario JSON file")
      ->required();
  compare->add_option("--a", mode_a, "First mode, <map>[,<actor>]")
      ->required();
  compare->add_option("--b", mode_b, "Second mode, <map>[,<actor>]")
      ->required();
  compare->add_option("--seed", seed, "Override the scenario seed");
  compare->add_option("--out", out_dir, "Output directory")->required();
  compare->add_flag("--two-lane", two_lane,
                    "Overlap scan integration with planning");

  CLI::App* bench =
      app.add_subcommand("bench-map", "Time incremental map updates");
  int batch_every = 5;
  bench->add_option("--scenario", scenario_path, "Scenario JSON file")
      ->required();
  bench->add_option("--out", out_dir, "Output directory")->required();
  bench->add_option("--seed", seed, "Override the scenario seed");
  bench->add_option("--batch-every", batch_every,
                    "Batch recompute after every k-th scan")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    const aerocine::runner::Scenario scenario = Load(scenario_path, seed);
    aerocine::runner::RunOptions options;
    options.two_lane = two_lane;
    if (run->parsed()) {
      const aerocine::runner::RunMode mode = Parse("--mode/--actor", [&] {
        aerocine::runner::RunMode m;
        m.map = aerocine::runner::ParseMapSource(map_source);
        aerocine::runner::ParseActorSource(actor_source, &m);
        return m;
      });
      PrintSummary(aerocine::runner::run_scenario(scenario, mode, options,
                                                  out_dir, dump_scans));
    } else if (compare->parsed()) {
      const auto a = Parse("--a", [&] {
        return aerocine::runner::ParseRunMode(mode_a);
      });
      const auto b = Parse("--b", [&] {
        return aerocine::runner::ParseRunMode(mode_b);
      });
      const auto summary =
          aerocine::runner::compare_modes(scenario, a, b, options, out_dir);
      PrintSummary(summary.a);
      PrintSummary(summary.b);
      std::printf("cost ratio %.6g  rms divergence %.6g m\n",
                  summary.cost_ratio, summary.rms_divergence);
    } else if (bench->parsed()) {
      const auto summary =
          aerocine::runner::bench_map(scenario, batch_every, out_dir);
      std::printf("%s\n", summary.ToJson().dump(2).c_str());
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return 0;
}
