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

#ifndef AEROCINE_RUNNER_CLOSED_LOOP_H_
#define AEROCINE_RUNNER_CLOSED_LOOP_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "Eigen/Core"
#include "aerocine/forecast/actor_filter.h"
#include "aerocine/runner/run_mode.h"
#include "aerocine/runner/scenario.h"

namespace aerocine {
namespace runner {

// Deterministic per-cycle outcome.
struct CycleRecord {
  int cycle = 0;
  double t = 0.0;
  int iterations = 0;
  bool converged = false;
  bool plan_error = false;
  double cost = 0.0;
  double smooth = 0.0;
  double shot = 0.0;
  double obs = 0.0;
  double occ = 0.0;
  // Minimum signed distance along the warm start and the result, measured
  // on the field the planner saw.
  double init_clearance = 0.0;
  double plan_clearance = 0.0;
  int64_t rays = 0;
  int64_t changes = 0;
  int64_t updated_voxels = 0;
  Eigen::Vector3d drone = Eigen::Vector3d::Zero();
  double drone_heading = 0.0;
  Eigen::Vector3d actor = Eigen::Vector3d::Zero();
};

// Wall-clock timing of one cycle (ms). scan_ms is the simulated sensor and
// is excluded from cycle_ms.
struct CycleTiming {
  int cycle = 0;
  double scan_ms = 0.0;
  double integrate_ms = 0.0;
  double sdf_ms = 0.0;
  double snapshot_ms = 0.0;
  double forecast_ms = 0.0;
  double plan_ms = 0.0;
  double cycle_ms = 0.0;
};

// One online map update (takeoff sweep or flight cycle).
struct MapRecord {
  std::string phase;  // "takeoff" or "flight"
  int index = 0;
  double t = 0.0;
  int64_t rays = 0;
  int64_t changes = 0;
  int64_t updated_voxels = 0;
  int64_t border_count = 0;
  bool batch_checked = false;
  bool batch_match = false;
};

struct MapTiming {
  double integrate_ms = 0.0;
  double sdf_ms = 0.0;
  double batch_ms = -1.0;  // -1 when no batch recompute ran
};

struct RunOptions {
  // Integrate the scan of cycle k while planning cycle k on the snapshot
  // taken before it.
  bool two_lane = false;
  // Run batch_recompute after every k-th online map update (0 disables).
  int batch_every = 0;
  std::ostream* scan_dump = nullptr;
  std::ostream* observation_dump = nullptr;
};

struct RunResult {
  std::vector<CycleRecord> cycles;
  std::vector<CycleTiming> timings;
  std::vector<MapRecord> map_updates;
  std::vector<MapTiming> map_timings;
};

// Sense, map, forecast and plan at the scenario's cycle period. The drone
// tracks each plan perfectly and replans from the previous plan shifted by
// one cycle.
RunResult RunClosedLoop(const Scenario& scenario, const RunMode& mode,
                        const RunOptions& options);

// Actor forecast from the scripted ground truth, sampled at t + k * dt.
forecast::ActorForecast ScriptedForecast(const sim::ScriptedActor& actor,
                                         double t, int samples, double dt);

}  // namespace runner
}  // namespace aerocine

#endif  // AEROCINE_RUNNER_CLOSED_LOOP_H_
