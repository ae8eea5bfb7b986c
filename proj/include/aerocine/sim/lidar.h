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

#ifndef AEROCINE_SIM_LIDAR_H_
#define AEROCINE_SIM_LIDAR_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <random>
#include <vector>

#include "Eigen/Core"
#include "aerocine/sim/world.h"
#include "aerocine/voxel_world/ray_update.h"

namespace aerocine {
namespace sim {

// Spinning multi-channel LiDAR with a vertical spin axis.
struct LidarModel {
  int channels = 16;
  double min_elevation = -0.261799387799149408;  // -15 deg
  double max_elevation = 0.261799387799149408;   // +15 deg
  int beams_per_revolution = 1800;               // azimuth steps
  double max_range = 100.0;                      // m
  double rate = 10.0;                            // revolutions per second

  // Throws std::invalid_argument on inconsistent values.
  void Validate() const;
  double azimuth_step() const;
  // Channel elevations, evenly spaced, lowest first.
  std::vector<double> Elevations() const;
};

struct SensorPose {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  double yaw = 0.0;
};

// One revolution. Beams are ordered by azimuth, then channel. Hits carry the
// exact intersection point; misses sit at max_range along the beam.
std::vector<voxel_world::RayMeasurement> simulate_scan(
    const WorldModel& world, const SensorPose& pose, const LidarModel& lidar);

// Adds zero-mean Gaussian noise of `sigma` meters to the position.
SensorPose JitterPose(const SensorPose& pose, double sigma,
                      std::mt19937_64* rng);

// Binary point records: t, x, y, z as little-endian float64 then is_hit as
// uint8 (33 bytes each).
struct ScanRecord {
  double t = 0.0;
  Eigen::Vector3d point = Eigen::Vector3d::Zero();
  bool is_hit = false;
};

void WriteScanRecords(std::ostream& out, double t,
                      const std::vector<voxel_world::RayMeasurement>& rays);
// Throws std::runtime_error on a truncated record.
std::vector<ScanRecord> ReadScanRecords(std::istream& in);

}  // namespace sim
}  // namespace aerocine

#endif  // AEROCINE_SIM_LIDAR_H_
