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

#ifndef AEROCINE_SIM_ACTOR_SCRIPT_H_
#define AEROCINE_SIM_ACTOR_SCRIPT_H_

#include <cstdint>
#include <vector>

#include "Eigen/Core"
#include "aerocine/forecast/actor_filter.h"

namespace aerocine {
namespace sim {

enum class PathType { kPolyline, kCircle };

// Actor moving at constant speed along a polyline or around a circle. The
// actor waits at the start until `start_time` and stops at the end of the
// path.
struct ScriptedActor {
  forecast::ActorKind kind = forecast::ActorKind::kPerson;
  PathType type = PathType::kPolyline;
  double speed = 1.0;  // m/s
  double start_time = 0.0;

  std::vector<Eigen::Vector3d> points;  // polyline vertices

  Eigen::Vector3d center = Eigen::Vector3d::Zero();  // circle
  double radius = 1.0;
  double start_angle = 0.0;
  bool counterclockwise = true;
  double laps = 1.0;

  // Throws std::invalid_argument when the path is degenerate.
  void Validate() const;
  double Length() const;
  // Time at which the actor reaches the end of the path.
  double EndTime() const;
};

// Exact pose on the path; heading follows the path tangent. Times past the
// end of the script return the final pose. Throws std::invalid_argument for
// t < 0.
forecast::ActorObservation actor_pose_at(const ScriptedActor& actor, double t);

// Adds uniform noise in [-amplitude, amplitude] to x and y, drawn from a
// generator seeded with `seed`.
forecast::ActorObservation perturb_observation(
    const forecast::ActorObservation& obs, double amplitude, uint64_t seed);

}  // namespace sim
}  // namespace aerocine

#endif  // AEROCINE_SIM_ACTOR_SCRIPT_H_
