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

#include "aerocine/planner/trajectory.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aerocine {
namespace planner {

Trajectory Trajectory::Constant(const Eigen::Vector3d& point, int n,
                                double horizon) {
  if (n < 2) throw std::invalid_argument("trajectory needs two waypoints");
  Trajectory traj;
  traj.positions = point.transpose().replicate(n, 1);
  traj.headings = Eigen::VectorXd::Zero(n);
  traj.horizon = horizon;
  return traj;
}

Trajectory Trajectory::Line(const Eigen::Vector3d& start,
                            const Eigen::Vector3d& end, int n,
                            double horizon) {
  Trajectory traj = Constant(start, n, horizon);
  for (int i = 0; i < n; ++i) {
    const double s = static_cast<double>(i) / (n - 1);
    traj.positions.row(i) = ((1.0 - s) * start + s * end).transpose();
  }
  return traj;
}

void ShotSpec::Validate() const {
  constexpr double kPi = std::numbers::pi;
  if (!(rho > 0.0)) throw std::invalid_argument("shot rho must be positive");
  if (!(phi_rel >= 0.0 && phi_rel <= 2.0 * kPi)) {
    throw std::invalid_argument("shot phi_rel must lie in [0, 2 pi]");
  }
  if (!(theta_rel >= -kPi && theta_rel <= kPi)) {
    throw std::invalid_argument("shot theta_rel must lie in [-pi, pi]");
  }
}

void UpdateHeadings(const forecast::ActorForecast& actor, Trajectory* traj) {
  const int n = traj->size();
  if (actor.size() != n) {
    throw std::invalid_argument("actor forecast and trajectory sizes differ");
  }
  if (traj->headings.size() != n) traj->headings = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector3d d =
        actor.positions.row(i).transpose() - traj->positions.row(i).transpose();
    if (d.head<2>().norm() > 1e-6) {
      traj->headings[i] = std::atan2(d.y(), d.x());
    } else if (i > 0) {
      traj->headings[i] = traj->headings[i - 1];
    }
  }
}

Eigen::Vector3d ShotOffset(const ShotSpec& shot, double actor_heading) {
  const double azimuth = actor_heading + shot.phi_rel;
  const double c = std::cos(shot.theta_rel);
  return shot.rho * Eigen::Vector3d(std::cos(azimuth) * c,
                                    std::sin(azimuth) * c,
                                    std::sin(shot.theta_rel));
}

Trajectory ideal_shot_trajectory(const forecast::ActorForecast& actor,
                                 const ShotSpec& shot) {
  const int n = actor.size();
  if (n < 2) throw std::invalid_argument("actor forecast needs two samples");
  Trajectory traj;
  traj.positions.resize(n, 3);
  traj.horizon = actor.times.back() - actor.times.front();
  for (int i = 0; i < n; ++i) {
    traj.positions.row(i) = actor.positions.row(i) +
                            ShotOffset(shot, actor.headings[i]).transpose();
  }
  traj.headings = Eigen::VectorXd::Zero(n);
  UpdateHeadings(actor, &traj);
  return traj;
}

}  // namespace planner
}  // namespace aerocine
