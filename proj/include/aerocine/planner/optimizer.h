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

#ifndef AEROCINE_PLANNER_OPTIMIZER_H_
#define AEROCINE_PLANNER_OPTIMIZER_H_

#include <string>

#include "aerocine/forecast/actor_filter.h"
#include "aerocine/itsdt/field_snapshot.h"
#include "aerocine/planner/costs.h"
#include "aerocine/planner/planner_config.h"
#include "aerocine/planner/trajectory.h"
#include "json.hpp"

namespace aerocine {
namespace planner {

struct PlanDiagnostics {
  int iterations = 0;
  bool converged = false;
  // Set when a non-finite cost or gradient stopped the descent.
  bool error = false;
  std::string error_message;
  double cost = 0.0;
  double smooth = 0.0;
  double shot = 0.0;
  double obs = 0.0;
  double occ = 0.0;
  // Frobenius norm of the preconditioned gradient at the returned iterate.
  double precond_grad_norm = 0.0;
  // Largest per-waypoint row of the same, compared to grad_tolerance.
  double max_waypoint_step = 0.0;
  double wall_ms = 0.0;
};

struct PlanResult {
  Trajectory trajectory;
  PlanDiagnostics diagnostics;
};

// Preconditioned gradient descent on total_cost from `initial`, with the
// start waypoint held fixed. The preconditioner is the Hessian of the
// quadratic part (smoothness plus weighted shot quality) and is factorized
// once. Headings of the result point at the actor samples.
// Throws std::invalid_argument on inconsistent sizes or config.
PlanResult plan(const Trajectory& initial,
                const forecast::ActorForecast& actor, const ShotSpec& shot,
                const itsdt::FieldSnapshot& field,
                const PlannerConfig& config);

// {t, iters, J, J_smooth, J_shot, J_obs, J_occ, wall_ms}
nlohmann::json DiagnosticsToJson(double t, const PlanDiagnostics& d);

}  // namespace planner
}  // namespace aerocine

#endif  // AEROCINE_PLANNER_OPTIMIZER_H_
