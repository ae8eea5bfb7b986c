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

#include "aerocine/voxel_world/grid_io.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace aerocine {
namespace voxel_world {
namespace {

static_assert(std::endian::native == std::endian::little,
              "snapshot IO assumes a little-endian host");

template <typename T>
void Put(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T Get(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw std::runtime_error("truncated snapshot header");
  return value;
}

Eigen::Vector3d Vec3FromJson(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3) {
    throw std::invalid_argument("expected a 3-element array");
  }
  return Eigen::Vector3d(j[0].get<double>(), j[1].get<double>(),
                         j[2].get<double>());
}

}  // namespace

void WriteSnapshotHeader(std::ostream& out, const SnapshotHeader& header) {
  out.write(header.magic.data(), 4);
  for (int a = 0; a < 3; ++a) Put<int32_t>(out, header.dims[a]);
  Put<float>(out, header.resolution);
  for (int a = 0; a < 3; ++a) Put<float>(out, header.origin[a]);
}

SnapshotHeader ReadSnapshotHeader(std::istream& in,
                                  const std::array<char, 4>& expected_magic) {
  SnapshotHeader header;
  in.read(header.magic.data(), 4);
  if (!in) throw std::runtime_error("truncated snapshot header");
  if (header.magic != expected_magic) {
    throw std::runtime_error("snapshot magic mismatch");
  }
  for (int a = 0; a < 3; ++a) header.dims[a] = Get<int32_t>(in);
  header.resolution = Get<float>(in);
  for (int a = 0; a < 3; ++a) header.origin[a] = Get<float>(in);
  return header;
}

nlohmann::json GridConfigToJson(const GridConfig& config) {
  return nlohmann::json{
      {"dims", {config.dims.x(), config.dims.y(), config.dims.z()}},
      {"resolution", config.resolution},
      {"origin", {config.origin.x(), config.origin.y(), config.origin.z()}},
      {"l_occ", config.l_occ},
      {"l_free", config.l_free},
      {"tau_free", config.tau_free},
      {"tau_occ", config.tau_occ}};
}

GridConfig GridConfigFromJson(const nlohmann::json& json) {
  GridConfig config;
  if (json.contains("dims")) {
    const Eigen::Vector3d dims = Vec3FromJson(json.at("dims"));
    config.dims = dims.cast<int>();
  }
  if (json.contains("resolution")) {
    config.resolution = json.at("resolution").get<double>();
  }
  if (json.contains("origin")) config.origin = Vec3FromJson(json.at("origin"));
  if (json.contains("l_occ")) config.l_occ = json.at("l_occ").get<int>();
  if (json.contains("l_free")) config.l_free = json.at("l_free").get<int>();
  if (json.contains("tau_free")) {
    config.tau_free = json.at("tau_free").get<int>();
  }
  if (json.contains("tau_occ")) config.tau_occ = json.at("tau_occ").get<int>();
  config.Validate();
  return config;
}

std::filesystem::path SidecarPath(const std::filesystem::path& path) {
  return std::filesystem::path(path.string() + ".json");
}

void WriteGridSnapshot(const OccupancyGrid& grid,
                       const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  const GridConfig& config = grid.config();
  SnapshotHeader header;
  header.magic = kGridMagic;
  header.dims = config.dims;
  header.resolution = static_cast<float>(config.resolution);
  header.origin = config.origin.cast<float>();
  WriteSnapshotHeader(out, header);
  const auto cells = grid.cells();
  out.write(reinterpret_cast<const char*>(cells.data()),
            static_cast<std::streamsize>(cells.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());

  std::ofstream sidecar(SidecarPath(path));
  sidecar << GridConfigToJson(config).dump(2) << "\n";
}

OccupancyGrid ReadGridSnapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  const SnapshotHeader header = ReadSnapshotHeader(in, kGridMagic);

  GridConfig config;
  const auto sidecar_path = SidecarPath(path);
  if (std::filesystem::exists(sidecar_path)) {
    std::ifstream sidecar(sidecar_path);
    config = GridConfigFromJson(nlohmann::json::parse(sidecar));
    if (config.dims != header.dims ||
        static_cast<float>(config.resolution) != header.resolution) {
      throw std::runtime_error("sidecar does not match snapshot header");
    }
  } else {
    config.dims = header.dims;
    config.resolution = header.resolution;
    config.origin = header.origin.cast<double>();
  }

  OccupancyGrid grid(config);
  auto cells = grid.mutable_cells();
  in.read(reinterpret_cast<char*>(cells.data()),
          static_cast<std::streamsize>(cells.size()));
  if (in.gcount() != static_cast<std::streamsize>(cells.size())) {
    throw std::runtime_error("truncated grid snapshot " + path.string());
  }
  return grid;
}

}  // namespace voxel_world
}  // namespace aerocine
