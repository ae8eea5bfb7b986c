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

#ifndef AEROCINE_FORECAST_CAMERA_H_
#define AEROCINE_FORECAST_CAMERA_H_

#include <optional>

#include "Eigen/Core"

namespace aerocine {
namespace forecast {

struct CameraIntrinsics {
  double fx = 800.0;
  double fy = 800.0;
  double cx = 640.0;
  double cy = 360.0;
  int width = 1280;
  int height = 720;

  void Validate() const;
  bool Contains(const Eigen::Vector2d& pixel) const;
};

// Pinhole camera. `rotation` maps camera-frame vectors to the world frame;
// the camera frame has x right, y down (image rows) and z along the optical
// axis.
struct CameraModel {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  CameraIntrinsics intrinsics;

  // Orientation of a camera whose optical axis has azimuth `yaw` and points
  // `pitch_down` radians below the horizon, with no roll.
  static Eigen::Matrix3d OrientationFromYawPitch(double yaw, double pitch_down);
  static CameraModel LookingAt(const Eigen::Vector3d& position,
                               const Eigen::Vector3d& target,
                               const CameraIntrinsics& intrinsics);
};

// Back-projects `pixel` and intersects the ray with the plane z = ground_z.
// Returns nullopt when the ray is parallel to or points away from the plane.
// Throws std::invalid_argument when the pixel lies outside the image.
std::optional<Eigen::Vector3d> project_pixel_to_ground(
    const CameraModel& camera, const Eigen::Vector2d& pixel, double ground_z);

// Forward pinhole projection; nullopt for points at or behind the camera.
std::optional<Eigen::Vector2d> project_to_pixel(const CameraModel& camera,
                                                const Eigen::Vector3d& point);

}  // namespace forecast
}  // namespace aerocine

#endif  // AEROCINE_FORECAST_CAMERA_H_
