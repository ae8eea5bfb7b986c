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

#ifndef AEROCINE_SIM_WORLD_H_
#define AEROCINE_SIM_WORLD_H_

#include <optional>
#include <vector>

#include "Eigen/Core"
#include "aerocine/voxel_world/occupancy_grid.h"

namespace aerocine {
namespace sim {

struct Box {
  Eigen::Vector3d min = Eigen::Vector3d::Zero();
  Eigen::Vector3d max = Eigen::Vector3d::Zero();
};

// Vertical cylinder between z_min and z_max.
struct Cylinder {
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  double radius = 0.0;
  double z_min = 0.0;
  double z_max = 0.0;
};

struct WorldModel {
  std::vector<Box> boxes;
  std::vector<Cylinder> cylinders;
  double ground_z = 0.0;
  Eigen::Vector3d bounds_min = Eigen::Vector3d::Zero();
  Eigen::Vector3d bounds_max = Eigen::Vector3d::Zero();

  // Throws std::invalid_argument for degenerate primitives or primitives
  // outside the bounds.
  void Validate() const;
  bool InBounds(const Eigen::Vector3d& p) const;
  // True inside (or on) an obstacle or at/below the ground plane.
  bool IsOccupied(const Eigen::Vector3d& p) const;
};

// Entry parameter of the ray origin + t * dir (t >= 0) into each primitive.
std::optional<double> IntersectBox(const Box& box, const Eigen::Vector3d& origin,
                                   const Eigen::Vector3d& dir);
std::optional<double> IntersectCylinder(const Cylinder& cylinder,
                                        const Eigen::Vector3d& origin,
                                        const Eigen::Vector3d& dir);
std::optional<double> IntersectGround(double ground_z,
                                      const Eigen::Vector3d& origin,
                                      const Eigen::Vector3d& dir);

// Nearest intersection with any primitive or the ground within max_t.
std::optional<double> IntersectWorld(const WorldModel& world,
                                     const Eigen::Vector3d& origin,
                                     const Eigen::Vector3d& dir, double max_t);

// Grid with every voxel whose center is occupied set to 255 and every other
// voxel set to 0.
voxel_world::OccupancyGrid rasterize_world(
    const WorldModel& world, const voxel_world::GridConfig& config);

}  // namespace sim
}  // namespace aerocine

#endif  // AEROCINE_SIM_WORLD_H_
