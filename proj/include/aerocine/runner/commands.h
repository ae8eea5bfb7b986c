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

#ifndef AEROCINE_RUNNER_COMMANDS_H_
#define AEROCINE_RUNNER_COMMANDS_H_

#include <filesystem>
#include <string>

#include "aerocine/runner/closed_loop.h"
#include "aerocine/runner/report.h"
#include "aerocine/runner/run_mode.h"
#include "aerocine/runner/scenario.h"
#include "json.hpp"

namespace aerocine {
namespace runner {

struct RunReport {
  RunResult result;
  Aggregates aggregates;
  TimingAggregates timing;
};

// Runs the closed loop and writes report.json, cycles.csv, trajectory.csv,
// timing.csv, observations.jsonl, map CSVs (online mode) and manifest.json
// under out_dir. With `dump_scans` the scans go to scans.bin.
RunReport run_scenario(const Scenario& scenario, const RunMode& mode,
                       const RunOptions& options,
                       const std::filesystem::path& out_dir,
                       bool dump_scans = false);

struct ComparisonSummary {
  RunReport a;
  RunReport b;
  // avg_cost(b) / avg_cost(a).
  double cost_ratio = 0.0;
  double median_ratio = 0.0;
  // RMS distance between the executed drone positions of both runs.
  double rms_divergence = 0.0;
  // Weighted change of each cost component from a to b.
  double delta_smooth = 0.0;
  double delta_shot = 0.0;
  double delta_obs = 0.0;
  double delta_occ = 0.0;

  nlohmann::json ToJson(const Scenario& scenario, const RunMode& mode_a,
                        const RunMode& mode_b) const;
};

// Runs both modes into out_dir/a and out_dir/b and writes comparison.json.
ComparisonSummary compare_modes(const Scenario& scenario, const RunMode& a,
                                const RunMode& b, const RunOptions& options,
                                const std::filesystem::path& out_dir);

struct BenchMapSummary {
  RunResult result;
  double first_update_ms = 0.0;
  // Median incremental update time of flight scans at t >= 30 s.
  double median_late_update_ms = 0.0;
  // Incremental and estimated batch time over flight scans at t >= 10 s.
  double incremental_after_warmup_ms = 0.0;
  double batch_after_warmup_ms = 0.0;
  int batch_checks = 0;
  int batch_mismatches = 0;

  nlohmann::json ToJson() const;
};

// Online mapping with the ground-truth actor; times apply_changes per scan
// and batch_recompute after every `batch_every`-th scan.
BenchMapSummary bench_map(const Scenario& scenario, int batch_every,
                          const std::filesystem::path& out_dir);

}  // namespace runner
}  // namespace aerocine

#endif  // AEROCINE_RUNNER_COMMANDS_H_
