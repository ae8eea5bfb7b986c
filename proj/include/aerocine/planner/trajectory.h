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

#ifndef AEROCINE_PLANNER_TRAJECTORY_H_
#define AEROCINE_PLANNER_TRAJECTORY_H_

#include <vector>

#include "Eigen/Core"
#include "aerocine/forecast/actor_filter.h"

namespace aerocine {
namespace planner {

// Waypoint-parameterized trajectory. Waypoint 0 sits at time 0 and the last
// one at `horizon`.
struct Trajectory {
  Eigen::MatrixX3d positions;
  Eigen::VectorXd headings;
  double horizon = 10.0;

  int size() const { return static_cast<int>(positions.rows()); }
  double dt() const { return horizon / (size() - 1); }

  // All waypoints at `point`, zero headings.
  static Trajectory Constant(const Eigen::Vector3d& point, int n,
                             double horizon);
  // Evenly spaced waypoints from `start` to `end`.
  static Trajectory Line(const Eigen::Vector3d& start,
                         const Eigen::Vector3d& end, int n, double horizon);
};

struct ShotSpec {
  double rho = 10.0;       // m
  double phi_rel = 0.0;    // line-of-action angle, [0, 2 pi]
  double theta_rel = 0.0;  // tilt, [-pi, pi]

  // Throws std::invalid_argument when out of range.
  void Validate() const;
};

// Points each heading from waypoint i toward actor sample i. Waypoints closer
// than 1e-6 m in the plane keep the previous heading (the first keeps its
// current value). Throws std::invalid_argument on a size mismatch.
void UpdateHeadings(const forecast::ActorForecast& actor, Trajectory* traj);

// Ideal viewpoint per actor sample on a sphere of radius rho around it.
Trajectory ideal_shot_trajectory(const forecast::ActorForecast& actor,
                                 const ShotSpec& shot);

Eigen::Vector3d ShotOffset(const ShotSpec& shot, double actor_heading);

}  // namespace planner
}  // namespace aerocine

#endif  // AEROCINE_PLANNER_TRAJECTORY_H_
