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

#ifndef AEROCINE_VOXEL_WORLD_GRID_IO_H_
#define AEROCINE_VOXEL_WORLD_GRID_IO_H_

#include <array>
#include <filesystem>
#include <iosfwd>

#include "aerocine/voxel_world/occupancy_grid.h"
#include "json.hpp"

namespace aerocine {
namespace voxel_world {

// 32-byte little-endian header shared by grid and field snapshots:
//   char[4] magic | int32[3] dims | float32 resolution | float32[3] origin
struct SnapshotHeader {
  std::array<char, 4> magic{};
  Eigen::Vector3i dims = Eigen::Vector3i::Zero();
  float resolution = 0.0f;
  Eigen::Vector3f origin = Eigen::Vector3f::Zero();
};

inline constexpr std::array<char, 4> kGridMagic = {'A', 'O', 'G', 'R'};
inline constexpr size_t kSnapshotHeaderBytes = 32;

void WriteSnapshotHeader(std::ostream& out, const SnapshotHeader& header);
// Throws std::runtime_error on short reads or a magic mismatch.
SnapshotHeader ReadSnapshotHeader(std::istream& in,
                                  const std::array<char, 4>& expected_magic);

nlohmann::json GridConfigToJson(const GridConfig& config);
// Missing keys keep their defaults. Throws std::invalid_argument on bad
// values.
GridConfig GridConfigFromJson(const nlohmann::json& json);

// Writes <path> (header + row-major cell bytes) and the JSON sidecar
// <path>.json mirroring the GridConfig.
void WriteGridSnapshot(const OccupancyGrid& grid,
                       const std::filesystem::path& path);
// Reads a snapshot written by WriteGridSnapshot. The sidecar, when present,
// supplies the full-precision config; it must agree with the header.
OccupancyGrid ReadGridSnapshot(const std::filesystem::path& path);

std::filesystem::path SidecarPath(const std::filesystem::path& path);

}  // namespace voxel_world
}  // namespace aerocine

#endif  // AEROCINE_VOXEL_WORLD_GRID_IO_H_
