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

#include "aerocine/sim/lidar.h"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aerocine {
namespace sim {

static_assert(std::endian::native == std::endian::little,
              "scan records assume a little-endian host");

void LidarModel::Validate() const {
  if (channels < 1) throw std::invalid_argument("lidar needs a channel");
  if (!(min_elevation <= max_elevation)) {
    throw std::invalid_argument("lidar elevation range is inverted");
  }
  if (beams_per_revolution < 1) {
    throw std::invalid_argument("lidar needs at least one beam per revolution");
  }
  if (!(max_range > 0.0)) throw std::invalid_argument("max_range must be > 0");
  if (!(rate > 0.0)) throw std::invalid_argument("rate must be > 0");
}

double LidarModel::azimuth_step() const {
  return 2.0 * std::numbers::pi / beams_per_revolution;
}

std::vector<double> LidarModel::Elevations() const {
  std::vector<double> out(channels);
  for (int c = 0; c < channels; ++c) {
    out[c] = channels == 1
                 ? 0.5 * (min_elevation + max_elevation)
                 : min_elevation +
                       (max_elevation - min_elevation) * c / (channels - 1);
  }
  return out;
}

std::vector<voxel_world::RayMeasurement> simulate_scan(
    const WorldModel& world, const SensorPose& pose, const LidarModel& lidar) {
  const std::vector<double> elevations = lidar.Elevations();
  std::vector<double> cos_e(elevations.size());
  std::vector<double> sin_e(elevations.size());
  for (size_t c = 0; c < elevations.size(); ++c) {
    cos_e[c] = std::cos(elevations[c]);
    sin_e[c] = std::sin(elevations[c]);
  }
  std::vector<voxel_world::RayMeasurement> rays;
  rays.reserve(static_cast<size_t>(lidar.beams_per_revolution) *
               elevations.size());
  for (int j = 0; j < lidar.beams_per_revolution; ++j) {
    const double azimuth = pose.yaw + j * lidar.azimuth_step();
    const double ca = std::cos(azimuth);
    const double sa = std::sin(azimuth);
    for (size_t c = 0; c < elevations.size(); ++c) {
      const Eigen::Vector3d dir(cos_e[c] * ca, cos_e[c] * sa, sin_e[c]);
      const std::optional<double> t =
          IntersectWorld(world, pose.position, dir, lidar.max_range);
      voxel_world::RayMeasurement ray;
      ray.p_sensor = pose.position;
      ray.is_hit = t.has_value();
      ray.p_point = pose.position + (t ? *t : lidar.max_range) * dir;
      rays.push_back(ray);
    }
  }
  return rays;
}

SensorPose JitterPose(const SensorPose& pose, double sigma,
                      std::mt19937_64* rng) {
  if (sigma <= 0.0) return pose;
  std::normal_distribution<double> noise(0.0, sigma);
  SensorPose out = pose;
  for (int a = 0; a < 3; ++a) out.position[a] += noise(*rng);
  return out;
}

void WriteScanRecords(std::ostream& out, double t,
                      const std::vector<voxel_world::RayMeasurement>& rays) {
  for (const auto& ray : rays) {
    const double values[4] = {t, ray.p_point.x(), ray.p_point.y(),
                              ray.p_point.z()};
    const uint8_t hit = ray.is_hit ? 1 : 0;
    out.write(reinterpret_cast<const char*>(values), sizeof(values));
    out.write(reinterpret_cast<const char*>(&hit), 1);
  }
}

std::vector<ScanRecord> ReadScanRecords(std::istream& in) {
  std::vector<ScanRecord> records;
  while (true) {
    double values[4];
    in.read(reinterpret_cast<char*>(values), sizeof(values));
    if (in.gcount() == 0) break;
    uint8_t hit = 0;
    if (in.gcount() != sizeof(values) ||
        !in.read(reinterpret_cast<char*>(&hit), 1)) {
      throw std::runtime_error("truncated scan record");
    }
    records.push_back(
        {values[0], Eigen::Vector3d(values[1], values[2], values[3]), hit != 0});
  }
  return records;
}

}  // namespace sim
}  // namespace aerocine
