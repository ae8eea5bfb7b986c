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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "aerocine/voxel_world/ray_update.h"

namespace aerocine {
namespace voxel_world {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Clips the parametric segment a + t (b - a), t in [0, 1], against the box.
// Returns false when nothing of the segment lies inside.
bool ClipToBox(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
               const Eigen::Vector3d& lo, const Eigen::Vector3d& hi,
               double* t_enter, double* t_exit) {
  double t0 = 0.0;
  double t1 = 1.0;
  const Eigen::Vector3d d = b - a;
  for (int axis = 0; axis < 3; ++axis) {
    if (d[axis] == 0.0) {
      if (a[axis] < lo[axis] || a[axis] > hi[axis]) return false;
      continue;
    }
    double ta = (lo[axis] - a[axis]) / d[axis];
    double tb = (hi[axis] - a[axis]) / d[axis];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return false;
  }
  *t_enter = t0;
  *t_exit = t1;
  return true;
}

int ClampIndex(double grid_coord, int dim) {
  const int i = static_cast<int>(std::floor(grid_coord));
  return std::clamp(i, 0, dim - 1);
}

}  // namespace

void traverse_ray_clipped(const Eigen::Vector3d& p_sensor,
                          const Eigen::Vector3d& p_point,
                          const GridConfig& config, ClippedTraversal* out) {
  out->voxels.clear();
  out->endpoint_in_grid = false;

  double t_enter = 0.0;
  double t_exit = 1.0;
  if (!ClipToBox(p_sensor, p_point, config.origin, config.max_corner(),
                 &t_enter, &t_exit)) {
    return;
  }
  out->endpoint_in_grid = (t_exit == 1.0);

  const Eigen::Vector3d delta = p_point - p_sensor;
  // Grid coordinates: voxel i spans [i, i + 1).
  const Eigen::Vector3d g0 =
      (p_sensor + t_enter * delta - config.origin) / config.resolution;
  const Eigen::Vector3d g1 =
      (p_sensor + t_exit * delta - config.origin) / config.resolution;
  const Eigen::Vector3d dg = g1 - g0;

  VoxelIndex current;
  VoxelIndex end;
  for (int a = 0; a < 3; ++a) {
    current[a] = ClampIndex(g0[a], config.dims[a]);
    end[a] = ClampIndex(g1[a], config.dims[a]);
  }

  Eigen::Vector3i step = Eigen::Vector3i::Zero();
  Eigen::Vector3d t_max = Eigen::Vector3d::Constant(kInf);
  Eigen::Vector3d t_delta = Eigen::Vector3d::Constant(kInf);
  for (int a = 0; a < 3; ++a) {
    if (dg[a] > 0.0) {
      step[a] = 1;
      t_max[a] = (current[a] + 1 - g0[a]) / dg[a];
      t_delta[a] = 1.0 / dg[a];
    } else if (dg[a] < 0.0) {
      step[a] = -1;
      t_max[a] = (current[a] - g0[a]) / dg[a];
      t_delta[a] = -1.0 / dg[a];
    }
  }

  out->voxels.push_back(current);
  const int max_steps = (end - current).cwiseAbs().sum();
  for (int n = 0; n < max_steps && current != end; ++n) {
    const double t = t_max.minCoeff();
    if (t > 1.0) break;
    for (int a = 0; a < 3; ++a) {
      if (t_max[a] == t) {
        current[a] += step[a];
        t_max[a] += t_delta[a];
      }
    }
    if ((current.array() < 0).any() ||
        (current.array() >= config.dims.array()).any()) {
      break;
    }
    out->voxels.push_back(current);
  }
  // Rounding can leave the walk one voxel short of the endpoint voxel; the
  // endpoint is always reported last.
  if (out->voxels.back() != end) out->voxels.push_back(end);
}

std::vector<VoxelIndex> traverse_ray(const Eigen::Vector3d& p_sensor,
                                     const Eigen::Vector3d& p_point,
                                     const GridConfig& config) {
  ClippedTraversal traversal;
  traverse_ray_clipped(p_sensor, p_point, config, &traversal);
  return std::move(traversal.voxels);
}

}  // namespace voxel_world
}  // namespace aerocine
