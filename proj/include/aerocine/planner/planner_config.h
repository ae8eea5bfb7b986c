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

#ifndef AEROCINE_PLANNER_PLANNER_CONFIG_H_
#define AEROCINE_PLANNER_PLANNER_CONFIG_H_

#include <filesystem>
#include <vector>

#include "json.hpp"

namespace aerocine {
namespace planner {

struct PlannerConfig {
  // Weights of shot quality, safety and occlusion relative to smoothness.
  double lambda1 = 10.0;
  double lambda2 = 100.0;
  double lambda3 = 50.0;
  // Smoothness weight per difference order; the size is the highest order.
  std::vector<double> alpha = {1.0, 1.0, 1.0};
  // Clearance below which obstacles are penalized (m).
  double epsilon_obs = 2.5;
  // Step is (1 / eta) times the preconditioned gradient.
  double eta = 1.0;
  int max_iterations = 10;
  // Stop once every waypoint's preconditioned step is shorter than this (m).
  double grad_tolerance = 1e-3;
  int waypoints = 51;
  double horizon = 10.0;  // s
  // Samples along each drone-actor segment for the occlusion integral.
  int occlusion_samples = 16;

  int d_max() const { return static_cast<int>(alpha.size()); }
  double waypoint_dt() const { return horizon / (waypoints - 1); }

  // Throws std::invalid_argument when an invariant is violated.
  void Validate() const;
};

nlohmann::json PlannerConfigToJson(const PlannerConfig& config);
// Keys absent from the object keep their defaults; unknown keys are
// rejected so typos surface. Throws std::invalid_argument.
PlannerConfig PlannerConfigFromJson(const nlohmann::json& json);
PlannerConfig LoadPlannerConfig(const std::filesystem::path& path);

}  // namespace planner
}  // namespace aerocine

#endif  // AEROCINE_PLANNER_PLANNER_CONFIG_H_
