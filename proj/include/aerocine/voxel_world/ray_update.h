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

#ifndef AEROCINE_VOXEL_WORLD_RAY_UPDATE_H_
#define AEROCINE_VOXEL_WORLD_RAY_UPDATE_H_

#include <vector>

#include "Eigen/Core"
#include "aerocine/voxel_world/occupancy_grid.h"

namespace aerocine {
namespace voxel_world {

struct RayMeasurement {
  Eigen::Vector3d p_sensor = Eigen::Vector3d::Zero();
  // For misses this is the point at maximum sensor range along the beam.
  Eigen::Vector3d p_point = Eigen::Vector3d::Zero();
  bool is_hit = false;
};

// Classification transitions produced by one or more ray updates.
//
// became_occupied holds voxels that turned occupied plus every unknown
// 6-neighbor of a voxel that turned free (those are new border candidates).
// became_unknown holds voxels that fell back to unknown from free or occupied;
// the distance transform needs them to demote stale border voxels.
struct ChangeSet {
  std::vector<VoxelIndex> became_occupied;
  std::vector<VoxelIndex> became_free;
  std::vector<VoxelIndex> became_unknown;

  bool empty() const {
    return became_occupied.empty() && became_free.empty() &&
           became_unknown.empty();
  }
  size_t size() const {
    return became_occupied.size() + became_free.size() +
           became_unknown.size();
  }
};

// Every voxel the segment intersects after clipping to the grid box, ordered
// from sensor to endpoint, each exactly once. Uses incremental DDA; when the
// segment crosses several voxel boundaries at the same parameter (an edge or
// a corner) all tied axes advance together, so voxels that only touch the
// segment in a single point are not reported.
std::vector<VoxelIndex> traverse_ray(const Eigen::Vector3d& p_sensor,
                                     const Eigen::Vector3d& p_point,
                                     const GridConfig& config);

struct ClippedTraversal {
  std::vector<VoxelIndex> voxels;
  // True when the unclipped endpoint lies inside the grid, i.e. the last
  // voxel is the measurement endpoint and not a boundary voxel.
  bool endpoint_in_grid = false;
};

// traverse_ray plus the endpoint flag; reuses out.voxels' storage.
void traverse_ray_clipped(const Eigen::Vector3d& p_sensor,
                          const Eigen::Vector3d& p_point,
                          const GridConfig& config, ClippedTraversal* out);

// Log-odds update of one LiDAR return. Every traversed voxel is decremented
// by l_free; the endpoint of a hit is then incremented by l_occ. The endpoint
// of a miss is left untouched. Values saturate at [0, 255].
ChangeSet update_ray(OccupancyGrid* grid, const RayMeasurement& ray);

// Sequential update_ray over the list. Per-voxel entries are deduplicated
// and the last list a voxel was reported in wins.
ChangeSet integrate_scan(OccupancyGrid* grid,
                         const std::vector<RayMeasurement>& rays);

}  // namespace voxel_world
}  // namespace aerocine

#endif  // AEROCINE_VOXEL_WORLD_RAY_UPDATE_H_
