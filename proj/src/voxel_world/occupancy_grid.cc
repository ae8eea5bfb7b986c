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

#include "aerocine/voxel_world/occupancy_grid.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace aerocine {
namespace voxel_world {

void GridConfig::Validate() const {
  if ((dims.array() <= 0).any()) {
    throw std::invalid_argument("grid dims must be positive on every axis");
  }
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw std::invalid_argument("grid resolution must be positive");
  }
  if (!origin.allFinite()) {
    throw std::invalid_argument("grid origin must be finite");
  }
  if (!(0 <= tau_free && tau_free < kUnknownValue &&
        kUnknownValue < tau_occ && tau_occ <= 255)) {
    throw std::invalid_argument(
        "thresholds must satisfy 0 <= tau_free < 127 < tau_occ <= 255, got "
        "tau_free=" +
        std::to_string(tau_free) + " tau_occ=" + std::to_string(tau_occ));
  }
  if (l_occ < 1 || l_free < 1 || l_occ > 255 || l_free > 255) {
    throw std::invalid_argument("l_occ and l_free must be in [1, 255]");
  }
}

OccupancyGrid::OccupancyGrid(const GridConfig& config) : config_(config) {
  config_.Validate();
  cells_.assign(static_cast<size_t>(config_.num_voxels()), kUnknownValue);
}

VoxelIndex OccupancyGrid::voxel_index(int64_t linear) const {
  const int64_t nx = config_.dims.x();
  const int64_t ny = config_.dims.y();
  return VoxelIndex(static_cast<int>(linear % nx),
                    static_cast<int>((linear / nx) % ny),
                    static_cast<int>(linear / (nx * ny)));
}

bool OccupancyGrid::contains_point(const Eigen::Vector3d& p) const {
  return (p.array() >= config_.origin.array()).all() &&
         (p.array() <= config_.max_corner().array()).all();
}

std::optional<VoxelIndex> OccupancyGrid::voxel_at(
    const Eigen::Vector3d& p) const {
  if (!contains_point(p)) return std::nullopt;
  VoxelIndex v;
  for (int a = 0; a < 3; ++a) {
    const int i = static_cast<int>(
        std::floor((p[a] - config_.origin[a]) / config_.resolution));
    // Points on the max face belong to the last voxel.
    v[a] = std::min(i, config_.dims[a] - 1);
  }
  return v;
}

Eigen::Vector3d OccupancyGrid::voxel_center(const VoxelIndex& v) const {
  return config_.origin +
         config_.resolution * (v.cast<double>().array() + 0.5).matrix();
}

}  // namespace voxel_world
}  // namespace aerocine
