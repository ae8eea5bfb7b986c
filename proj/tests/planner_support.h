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


#ifndef AEROCINE_TESTS_PLANNER_SUPPORT_H_
#define AEROCINE_TESTS_PLANNER_SUPPORT_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "Eigen/Cholesky"
#include "aerocine/itsdt/signed_distance_field.h"
#include "aerocine/planner/costs.h"
#include "aerocine/planner/planner_config.h"
#include "aerocine/planner/trajectory.h"

namespace aerocine {
namespace testing {

using forecast::ActorForecast;
using itsdt::FieldSnapshot;
using planner::PlannerConfig;
using planner::ShotSpec;
using planner::Trajectory;
using voxel_world::GridConfig;

inline GridConfig BoxConfig(const Eigen::Vector3d& origin, const Eigen::Vector3i& dims,
                     double resolution) {
  GridConfig config;
  config.origin = origin;
  config.dims = dims;
  config.resolution = resolution;
  return config;
}

// Samples `fn` at every voxel center, clamped to [-truncation, truncation].
inline FieldSnapshot AnalyticField(const GridConfig& config, double truncation,
                            const std::function<double(const Eigen::Vector3d&)>& fn) {
  const voxel_world::OccupancyGrid grid(config);
  std::vector<double> values(grid.num_voxels());
  for (int64_t i = 0; i < grid.num_voxels(); ++i) {
    const double d = fn(grid.voxel_center(grid.voxel_index(i)));
    values[i] = std::clamp(d, -truncation, truncation);
  }
  return FieldSnapshot(config, truncation, std::move(values));
}

inline FieldSnapshot OpenSpace() {
  return AnalyticField(
      BoxConfig(Eigen::Vector3d(-100, -100, -20), Eigen::Vector3i(20, 20, 8),
                10.0),
      5.0, [](const Eigen::Vector3d&) { return 5.0; });
}

inline ActorForecast LinearActor(int n, double horizon, const Eigen::Vector3d& start,
                          const Eigen::Vector3d& velocity) {
  ActorForecast actor;
  actor.times.resize(n);
  actor.positions.resize(n, 3);
  actor.headings.resize(n);
  for (int i = 0; i < n; ++i) {
    const double t = horizon * i / (n - 1);
    actor.times[i] = t;
    actor.positions.row(i) = (start + velocity * t).transpose();
    actor.headings[i] = std::atan2(velocity.y(), velocity.x());
  }
  return actor;
}

inline Trajectory RandomTrajectory(int n, double horizon, const Eigen::Vector3d& lo,
                            const Eigen::Vector3d& hi, std::mt19937_64* rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Trajectory traj = Trajectory::Constant(Eigen::Vector3d::Zero(), n, horizon);
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < 3; ++a) {
      traj.positions(i, a) = lo[a] + (hi[a] - lo[a]) * unit(*rng);
    }
  }
  return traj;
}

// Central differences over the free waypoints; row 0 stays zero.
inline Eigen::MatrixX3d NumericGradient(const Trajectory& traj,
                                 const std::function<double(const Trajectory&)>& f,
                                 double h) {
  Eigen::MatrixX3d g = Eigen::MatrixX3d::Zero(traj.size(), 3);
  for (int i = 1; i < traj.size(); ++i) {
    for (int a = 0; a < 3; ++a) {
      Trajectory plus = traj;
      Trajectory minus = traj;
      plus.positions(i, a) += h;
      minus.positions(i, a) -= h;
      g(i, a) = (f(plus) - f(minus)) / (2.0 * h);
    }
  }
  return g;
}

inline double RelativeError(const Eigen::MatrixX3d& analytic,
                     const Eigen::MatrixX3d& numeric) {
  const double scale = std::max(numeric.norm(), 1e-9);
  return (analytic - numeric).norm() / scale;
}

// Random blocks of occupied voxels in free space.
inline FieldSnapshot RandomMap(std::mt19937_64* rng) {
  const GridConfig config =
      BoxConfig(Eigen::Vector3d::Zero(), Eigen::Vector3i(24, 24, 12), 0.5);
  voxel_world::OccupancyGrid grid(config);
  for (int64_t i = 0; i < grid.num_voxels(); ++i) grid.set_value(i, 0);
  std::uniform_int_distribution<int> xy(0, 21);
  std::uniform_int_distribution<int> z(0, 9);
  for (int b = 0; b < 6; ++b) {
    const voxel_world::VoxelIndex lo(xy(*rng), xy(*rng), z(*rng));
    for (int dz = 0; dz < 3; ++dz) {
      for (int dy = 0; dy < 3; ++dy) {
        for (int dx = 0; dx < 3; ++dx) {
          grid.set_value(lo + voxel_world::VoxelIndex(dx, dy, dz), 255);
        }
      }
    }
  }
  itsdt::SdfConfig sdf;
  sdf.truncation = 3.0;
  return itsdt::batch_recompute(grid, sdf).snapshot(grid);
}

struct QuadraticProblem {
  PlannerConfig config;
  ActorForecast actor;
  ShotSpec shot;
  Trajectory initial;
  FieldSnapshot field = OpenSpace();

  QuadraticProblem() {
    config.lambda1 = 1.0;
    config.lambda2 = config.lambda3 = 0.0;
    actor = LinearActor(51, 10.0, Eigen::Vector3d(0, 0, 1),
                        Eigen::Vector3d(1.5, 0.5, 0));
    shot.rho = 6.0;
    shot.phi_rel = std::numbers::pi / 2.0;
    shot.theta_rel = 0.5;
    initial = Trajectory::Constant(Eigen::Vector3d(-3, 4, 2), 51, 10.0);
  }

  // Minimizer of J_smooth + l1 J_shot over the free waypoints by a direct
  // linear solve of the normal equations.
  Trajectory Optimum() const {
    const int n = initial.size();
    const double scale = 1.0 / (n - 1);
    const Eigen::MatrixXd a = planner::SmoothnessMatrix(n, initial.dt(), config.alpha);
    const Trajectory ideal = planner::ideal_shot_trajectory(actor, shot);
    const Eigen::MatrixXd h =
        scale * (a.bottomRightCorner(n - 1, n - 1) +
                 config.lambda1 * Eigen::MatrixXd::Identity(n - 1, n - 1));
    const Eigen::MatrixX3d rhs =
        scale * (config.lambda1 * ideal.positions.bottomRows(n - 1) -
                 a.col(0).tail(n - 1) * initial.positions.row(0));
    Trajectory out = initial;
    out.positions.bottomRows(n - 1) = h.ldlt().solve(rhs);
    return out;
  }
};

}  // namespace testing
}  // namespace aerocine

#endif  // AEROCINE_TESTS_PLANNER_SUPPORT_H_
