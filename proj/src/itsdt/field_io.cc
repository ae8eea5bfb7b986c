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

#include "aerocine/itsdt/field_io.h"

#include <fstream>
#include <stdexcept>

#include "aerocine/voxel_world/grid_io.h"

namespace aerocine {
namespace itsdt {

void WriteFieldSnapshot(const FieldSnapshot& field,
                        const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  const auto& config = field.grid_config();
  voxel_world::SnapshotHeader header;
  header.magic = kFieldMagic;
  header.dims = config.dims;
  header.resolution = static_cast<float>(config.resolution);
  header.origin = config.origin.cast<float>();
  voxel_world::WriteSnapshotHeader(out, header);
  std::vector<float> cells(field.signed_values().begin(),
                           field.signed_values().end());
  out.write(reinterpret_cast<const char*>(cells.data()),
            static_cast<std::streamsize>(cells.size() * sizeof(float)));
  if (!out) throw std::runtime_error("failed writing " + path.string());

  nlohmann::json sidecar = voxel_world::GridConfigToJson(config);
  sidecar["truncation"] = field.truncation();
  std::ofstream(voxel_world::SidecarPath(path)) << sidecar.dump(2) << "\n";
}

FieldSnapshot ReadFieldSnapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  const auto header = voxel_world::ReadSnapshotHeader(in, kFieldMagic);
  std::ifstream sidecar_in(voxel_world::SidecarPath(path));
  if (!sidecar_in) {
    throw std::runtime_error("missing field sidecar for " + path.string());
  }
  const auto sidecar = nlohmann::json::parse(sidecar_in);
  const auto config = voxel_world::GridConfigFromJson(sidecar);
  if (config.dims != header.dims) {
    throw std::runtime_error("sidecar does not match field header");
  }
  std::vector<float> cells(static_cast<size_t>(config.num_voxels()));
  in.read(reinterpret_cast<char*>(cells.data()),
          static_cast<std::streamsize>(cells.size() * sizeof(float)));
  if (in.gcount() !=
      static_cast<std::streamsize>(cells.size() * sizeof(float))) {
    throw std::runtime_error("truncated field snapshot " + path.string());
  }
  return FieldSnapshot(config, sidecar.at("truncation").get<double>(),
                       std::vector<double>(cells.begin(), cells.end()));
}

}  // namespace itsdt
}  // namespace aerocine
