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

#ifndef AEROCINE_VOXEL_WORLD_OCCUPANCY_GRID_H_
#define AEROCINE_VOXEL_WORLD_OCCUPANCY_GRID_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "Eigen/Core"

namespace aerocine {
namespace voxel_world {

using VoxelIndex = Eigen::Vector3i;

inline constexpr uint8_t kUnknownValue = 127;

// Geometry and log-odds parameters of the occupancy grid. Cell values live on
// an 8-bit scale: 0 is certainly free, 255 certainly occupied.
struct GridConfig {
  Eigen::Vector3i dims{250, 250, 100};
  double resolution = 1.0;
  // World coordinate of the minimum corner of voxel (0, 0, 0).
  Eigen::Vector3d origin = Eigen::Vector3d::Zero();
  int l_occ = 32;
  int l_free = 4;
  int tau_free = 115;
  int tau_occ = 140;

  bool operator==(const GridConfig& other) const = default;

  // Throws std::invalid_argument when an invariant is violated.
  void Validate() const;

  int64_t num_voxels() const {
    return static_cast<int64_t>(dims.x()) * dims.y() * dims.z();
  }
  Eigen::Vector3d max_corner() const {
    return origin + resolution * dims.cast<double>();
  }
};

enum class Occupancy : uint8_t { kFree, kUnknown, kOccupied };

class OccupancyGrid {
 public:
  explicit OccupancyGrid(const GridConfig& config);

  const GridConfig& config() const { return config_; }
  const Eigen::Vector3i& dims() const { return config_.dims; }
  int64_t num_voxels() const { return static_cast<int64_t>(cells_.size()); }

  bool contains(const VoxelIndex& v) const {
    return (v.array() >= 0).all() && (v.array() < config_.dims.array()).all();
  }
  // Row-major with x fastest.
  int64_t linear_index(const VoxelIndex& v) const {
    return (static_cast<int64_t>(v.z()) * config_.dims.y() + v.y()) *
               config_.dims.x() +
           v.x();
  }
  VoxelIndex voxel_index(int64_t linear) const;

  // Voxel containing world point p, or nullopt when p is outside the grid.
  std::optional<VoxelIndex> voxel_at(const Eigen::Vector3d& p) const;
  Eigen::Vector3d voxel_center(const VoxelIndex& v) const;
  bool contains_point(const Eigen::Vector3d& p) const;

  uint8_t value(const VoxelIndex& v) const { return cells_[linear_index(v)]; }
  uint8_t value(int64_t linear) const { return cells_[linear]; }
  void set_value(const VoxelIndex& v, uint8_t value) {
    cells_[linear_index(v)] = value;
  }
  void set_value(int64_t linear, uint8_t value) { cells_[linear] = value; }

  Occupancy classify_value(uint8_t value) const {
    if (value <= config_.tau_free) return Occupancy::kFree;
    if (value >= config_.tau_occ) return Occupancy::kOccupied;
    return Occupancy::kUnknown;
  }
  Occupancy classify(const VoxelIndex& v) const {
    return classify_value(value(v));
  }
  Occupancy classify(int64_t linear) const {
    return classify_value(cells_[linear]);
  }

  std::span<const uint8_t> cells() const { return cells_; }
  std::span<uint8_t> mutable_cells() { return cells_; }

  bool operator==(const OccupancyGrid& other) const = default;

 private:
  GridConfig config_;
  std::vector<uint8_t> cells_;
};

// Offsets of the 6-connected neighborhood.
inline const std::array<Eigen::Vector3i, 6>& SixNeighborhood() {
  static const std::array<Eigen::Vector3i, 6> kOffsets = {
      Eigen::Vector3i(-1, 0, 0), Eigen::Vector3i(1, 0, 0),
      Eigen::Vector3i(0, -1, 0), Eigen::Vector3i(0, 1, 0),
      Eigen::Vector3i(0, 0, -1), Eigen::Vector3i(0, 0, 1)};
  return kOffsets;
}

}  // namespace voxel_world
}  // namespace aerocine

#endif  // AEROCINE_VOXEL_WORLD_OCCUPANCY_GRID_H_
