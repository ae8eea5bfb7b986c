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

#include "aerocine/sim/world.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace aerocine {
namespace sim {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Parameter interval [lo, hi] where the ray lies inside the slab; empty when
// lo > hi.
void Slab(double origin, double dir, double min, double max, double* lo,
          double* hi) {
  if (dir == 0.0) {
    if (origin < min || origin > max) {
      *lo = kInf;
      *hi = -kInf;
    }
    return;
  }
  double t0 = (min - origin) / dir;
  double t1 = (max - origin) / dir;
  if (t0 > t1) std::swap(t0, t1);
  *lo = std::max(*lo, t0);
  *hi = std::min(*hi, t1);
}

std::optional<double> Entry(double lo, double hi) {
  if (lo > hi || hi < 0.0) return std::nullopt;
  return std::max(lo, 0.0);
}

}  // namespace

void WorldModel::Validate() const {
  if (!(bounds_min.array() < bounds_max.array()).all()) {
    throw std::invalid_argument("world bounds are empty");
  }
  if (ground_z < bounds_min.z() || ground_z > bounds_max.z()) {
    throw std::invalid_argument("ground_z lies outside the world bounds");
  }
  for (const Box& box : boxes) {
    if (!(box.min.array() < box.max.array()).all()) {
      throw std::invalid_argument("box has non-positive extent");
    }
    if (!InBounds(box.min) || !InBounds(box.max)) {
      throw std::invalid_argument("box lies outside the world bounds");
    }
  }
  for (const Cylinder& c : cylinders) {
    if (!(c.radius > 0.0) || !(c.z_min < c.z_max)) {
      throw std::invalid_argument("cylinder has non-positive extent");
    }
    const Eigen::Vector3d lo(c.center.x() - c.radius, c.center.y() - c.radius,
                             c.z_min);
    const Eigen::Vector3d hi(c.center.x() + c.radius, c.center.y() + c.radius,
                             c.z_max);
    if (!InBounds(lo) || !InBounds(hi)) {
      throw std::invalid_argument("cylinder lies outside the world bounds");
    }
  }
}

bool WorldModel::InBounds(const Eigen::Vector3d& p) const {
  return (p.array() >= bounds_min.array()).all() &&
         (p.array() <= bounds_max.array()).all();
}

bool WorldModel::IsOccupied(const Eigen::Vector3d& p) const {
  if (p.z() <= ground_z) return true;
  for (const Box& box : boxes) {
    if ((p.array() >= box.min.array()).all() &&
        (p.array() <= box.max.array()).all()) {
      return true;
    }
  }
  for (const Cylinder& c : cylinders) {
    if (p.z() >= c.z_min && p.z() <= c.z_max &&
        (p.head<2>() - c.center).squaredNorm() <= c.radius * c.radius) {
      return true;
    }
  }
  return false;
}

std::optional<double> IntersectBox(const Box& box, const Eigen::Vector3d& origin,
                                   const Eigen::Vector3d& dir) {
  double lo = -kInf;
  double hi = kInf;
  for (int a = 0; a < 3; ++a) {
    Slab(origin[a], dir[a], box.min[a], box.max[a], &lo, &hi);
  }
  return Entry(lo, hi);
}

std::optional<double> IntersectCylinder(const Cylinder& cylinder,
                                        const Eigen::Vector3d& origin,
                                        const Eigen::Vector3d& dir) {
  double lo = -kInf;
  double hi = kInf;
  Slab(origin.z(), dir.z(), cylinder.z_min, cylinder.z_max, &lo, &hi);
  const Eigen::Vector2d o = origin.head<2>() - cylinder.center;
  const Eigen::Vector2d d = dir.head<2>();
  const double a = d.squaredNorm();
  const double c = o.squaredNorm() - cylinder.radius * cylinder.radius;
  if (a == 0.0) {
    if (c > 0.0) return std::nullopt;
  } else {
    const double b = o.dot(d);
    const double disc = b * b - a * c;
    if (disc < 0.0) return std::nullopt;
    const double root = std::sqrt(disc);
    // Numerically stable pair of roots.
    const double q = b >= 0.0 ? -(b + root) : -(b - root);
    double t0 = q / a;
    double t1 = q != 0.0 ? c / q : -t0;
    if (t0 > t1) std::swap(t0, t1);
    lo = std::max(lo, t0);
    hi = std::min(hi, t1);
  }
  return Entry(lo, hi);
}

std::optional<double> IntersectGround(double ground_z,
                                      const Eigen::Vector3d& origin,
                                      const Eigen::Vector3d& dir) {
  if (origin.z() <= ground_z) return 0.0;
  if (dir.z() >= 0.0) return std::nullopt;
  return (ground_z - origin.z()) / dir.z();
}

std::optional<double> IntersectWorld(const WorldModel& world,
                                     const Eigen::Vector3d& origin,
                                     const Eigen::Vector3d& dir, double max_t) {
  double best = kInf;
  const auto consider = [&](const std::optional<double>& t) {
    if (t && *t < best) best = *t;
  };
  consider(IntersectGround(world.ground_z, origin, dir));
  for (const Box& box : world.boxes) consider(IntersectBox(box, origin, dir));
  for (const Cylinder& c : world.cylinders) {
    consider(IntersectCylinder(c, origin, dir));
  }
  if (best > max_t) return std::nullopt;
  return best;
}

voxel_world::OccupancyGrid rasterize_world(
    const WorldModel& world, const voxel_world::GridConfig& config) {
  voxel_world::OccupancyGrid grid(config);
  const std::span<uint8_t> cells = grid.mutable_cells();
  int64_t index = 0;
  for (int z = 0; z < config.dims.z(); ++z) {
    for (int y = 0; y < config.dims.y(); ++y) {
      for (int x = 0; x < config.dims.x(); ++x, ++index) {
        const Eigen::Vector3d center =
            grid.voxel_center(voxel_world::VoxelIndex(x, y, z));
        cells[index] = world.IsOccupied(center) ? 255 : 0;
      }
    }
  }
  return grid;
}

}  // namespace sim
}  // namespace aerocine
