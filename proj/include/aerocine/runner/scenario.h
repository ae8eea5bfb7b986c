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

#ifndef AEROCINE_RUNNER_SCENARIO_H_
#define AEROCINE_RUNNER_SCENARIO_H_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "Eigen/Core"
#include "aerocine/forecast/camera.h"
#include "aerocine/itsdt/signed_distance_field.h"
#include "aerocine/planner/planner_config.h"
#include "aerocine/planner/trajectory.h"
#include "aerocine/sim/actor_script.h"
#include "aerocine/sim/lidar.h"
#include "aerocine/sim/world.h"
#include "aerocine/voxel_world/occupancy_grid.h"
#include "json.hpp"

namespace aerocine {
namespace runner {

// Malformed or inconsistent scenario input. The message names the file and
// the offending line or field.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Vertical sweep of scans that seeds the online map before the first cycle.
struct TakeoffSweep {
  double start_altitude = 1.0;  // m above ground
  double top_altitude = 0.0;    // m above ground; 0 means no sweep
  double step = 1.0;            // m
};

struct Scenario {
  std::string name;
  double duration = 0.0;      // s
  double cycle_period = 0.2;  // s
  uint64_t seed = 0;

  sim::WorldModel world;
  voxel_world::GridConfig grid;
  itsdt::SdfConfig sdf;
  sim::LidarModel lidar;
  double pose_jitter = 0.0;  // m, Gaussian sigma

  sim::ScriptedActor actor;
  forecast::CameraIntrinsics camera;

  planner::ShotSpec shot;
  planner::PlannerConfig planner;

  Eigen::Vector3d drone_start = Eigen::Vector3d::Zero();
  TakeoffSweep takeoff;
  double budget_ms = 200.0;

  int cycle_count() const;
  // Waypoints the plan advances per cycle.
  int waypoints_per_cycle() const;
  // Throws ConfigError.
  void Validate() const;
};

// `base_dir` resolves a planner config given as a relative file name.
Scenario ScenarioFromJson(const nlohmann::json& json,
                          const std::filesystem::path& base_dir);
Scenario LoadScenario(const std::filesystem::path& path);
nlohmann::json ScenarioToJson(const Scenario& scenario);

}  // namespace runner
}  // namespace aerocine

#endif  // AEROCINE_RUNNER_SCENARIO_H_
