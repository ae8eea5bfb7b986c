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

#ifndef AEROCINE_ITSDT_SIGNED_DISTANCE_FIELD_H_
#define AEROCINE_ITSDT_SIGNED_DISTANCE_FIELD_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "Eigen/Core"
#include "aerocine/itsdt/field_snapshot.h"
#include "aerocine/voxel_world/occupancy_grid.h"
#include "aerocine/voxel_world/ray_update.h"

namespace aerocine {
namespace itsdt {

struct SdfConfig {
  // Maximum propagated distance in meters.
  double truncation = 5.0;

  // Requires truncation > 0 and truncation >= 2 * resolution.
  void Validate(double resolution) const;
};

// A voxel is a border if it is occupied, or unknown with a free 6-neighbor.
bool IsBorderVoxel(const voxel_world::OccupancyGrid& grid,
                   const voxel_world::VoxelIndex& v);

// Truncated distance from every voxel center to the nearest border voxel
// center, maintained incrementally from occupancy ChangeSets.
//
// Each voxel stores the integer squared distance (in voxel units) to its
// nearest border plus that border's index, so distances are exact Euclidean
// values and never accumulate propagation error. Updates walk a precomputed
// stencil of all offsets within the truncation radius sorted by distance:
//  - a new border lowers every voxel of its stencil it is closer to,
//  - a removed border raises (clears) every voxel that referenced it, and
//    each cleared voxel then searches its stencil outward, nearest shell
//    first, for the closest remaining border.
class SignedDistanceField {
 public:
  SignedDistanceField(const voxel_world::GridConfig& grid_config,
                      const SdfConfig& config);

  // Updates the border set and the distances after `grid` integrated the
  // rays that produced `changes`. Returns the number of voxels whose
  // distance or nearest border changed. Throws std::out_of_range, leaving
  // the field untouched, if a change lies outside the grid.
  int64_t apply_changes(const voxel_world::OccupancyGrid& grid,
                        const voxel_world::ChangeSet& changes);

  const SdfConfig& config() const { return config_; }
  const voxel_world::GridConfig& grid_config() const { return grid_config_; }
  int64_t num_voxels() const { return static_cast<int64_t>(sq_.size()); }

  // Unsigned distance in meters, clamped to the truncation.
  double distance(int64_t index) const;
  double distance(const voxel_world::VoxelIndex& v) const;
  // Squared distance in voxel units; nullopt when no border is in range.
  std::optional<int32_t> squared_voxel_distance(int64_t index) const;
  std::optional<voxel_world::VoxelIndex> nearest_border(
      const voxel_world::VoxelIndex& v) const;
  bool is_border(const voxel_world::VoxelIndex& v) const;
  // Sorted linear indices of the border set.
  std::vector<int64_t> border_set() const;
  int64_t border_count() const { return border_count_; }

  // +distance for voxels the grid classifies free, -distance otherwise.
  double signed_value(const voxel_world::OccupancyGrid& grid,
                      int64_t index) const;

  FieldSnapshot snapshot(const voxel_world::OccupancyGrid& grid) const;

 private:
  friend SignedDistanceField batch_recompute(
      const voxel_world::OccupancyGrid& grid, const SdfConfig& config);

  struct StencilOffset {
    int dx, dy, dz;
    int32_t sq;
    int64_t delta;  // linear index offset
  };

  int64_t Linear(int x, int y, int z) const {
    return (static_cast<int64_t>(z) * grid_config_.dims.y() + y) *
               grid_config_.dims.x() +
           x;
  }
  // True when the whole stencil around v stays inside the grid.
  bool StencilInside(const voxel_world::VoxelIndex& v) const;
  bool InGrid(const voxel_world::VoxelIndex& v, const StencilOffset& o) const;
  voxel_world::VoxelIndex Coords(int64_t index) const;
  void Touch(int64_t index);
  void LowerFrom(int64_t border);
  void RaiseFrom(int64_t border);
  void Resolve(int64_t index);

  voxel_world::GridConfig grid_config_;
  SdfConfig config_;
  int32_t max_sq_ = 0;
  int32_t none_sq_ = 1;
  int stencil_radius_ = 0;
  std::vector<StencilOffset> stencil_;
  std::vector<double> distance_by_sq_;

  std::vector<int32_t> sq_;
  std::vector<int32_t> nearest_;
  std::vector<uint8_t> border_;
  int64_t border_count_ = 0;

  // Per-update scratch: voxels touched this update with their old state.
  std::vector<uint32_t> mark_;
  uint32_t generation_ = 0;
  std::vector<int64_t> touched_;
  std::vector<std::pair<int32_t, int32_t>> touched_old_;
  std::vector<int64_t> raised_;
};

// Builds the field from scratch: scans the grid for border voxels and runs an
// exact separable squared Euclidean distance transform that also tracks the
// nearest border, then truncates. Independent of the incremental path.
SignedDistanceField batch_recompute(const voxel_world::OccupancyGrid& grid,
                                    const SdfConfig& config);

// Interpolated signed distance at a world point. Throws std::out_of_range
// outside the grid.
double signed_distance_at(const SignedDistanceField& sdf,
                          const voxel_world::OccupancyGrid& grid,
                          const Eigen::Vector3d& p);
// Central differences of signed_distance_at with step resolution / 2.
GradientQuery gradient_at(const SignedDistanceField& sdf,
                          const voxel_world::OccupancyGrid& grid,
                          const Eigen::Vector3d& p);

}  // namespace itsdt
}  // namespace aerocine

#endif  // AEROCINE_ITSDT_SIGNED_DISTANCE_FIELD_H_
