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

#include "aerocine/forecast/camera.h"

#include <cmath>
#include <stdexcept>

#include "Eigen/Geometry"

namespace aerocine {
namespace forecast {

void CameraIntrinsics::Validate() const {
  if (!(fx > 0.0) || !(fy > 0.0)) {
    throw std::invalid_argument("focal lengths must be positive");
  }
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("image size must be positive");
  }
  if (!Contains(Eigen::Vector2d(cx, cy))) {
    throw std::invalid_argument("principal point must lie inside the image");
  }
}

bool CameraIntrinsics::Contains(const Eigen::Vector2d& pixel) const {
  return pixel.x() >= 0.0 && pixel.y() >= 0.0 && pixel.x() <= width &&
         pixel.y() <= height;
}

Eigen::Matrix3d CameraModel::OrientationFromYawPitch(double yaw,
                                                     double pitch_down) {
  const Eigen::Vector3d forward(std::cos(pitch_down) * std::cos(yaw),
                                std::cos(pitch_down) * std::sin(yaw),
                                -std::sin(pitch_down));
  const Eigen::Vector3d right(std::sin(yaw), -std::cos(yaw), 0.0);
  const Eigen::Vector3d down = forward.cross(right);
  Eigen::Matrix3d rotation;
  rotation.col(0) = right;
  rotation.col(1) = down;
  rotation.col(2) = forward;
  return rotation;
}

CameraModel CameraModel::LookingAt(const Eigen::Vector3d& position,
                                   const Eigen::Vector3d& target,
                                   const CameraIntrinsics& intrinsics) {
  const Eigen::Vector3d dir = (target - position).normalized();
  const double horizontal = std::hypot(dir.x(), dir.y());
  const double yaw = horizontal > 1e-12 ? std::atan2(dir.y(), dir.x()) : 0.0;
  const double pitch_down = std::atan2(-dir.z(), horizontal);
  CameraModel camera;
  camera.position = position;
  camera.rotation = OrientationFromYawPitch(yaw, pitch_down);
  camera.intrinsics = intrinsics;
  return camera;
}

std::optional<Eigen::Vector3d> project_pixel_to_ground(
    const CameraModel& camera, const Eigen::Vector2d& pixel, double ground_z) {
  const CameraIntrinsics& k = camera.intrinsics;
  if (!k.Contains(pixel)) {
    throw std::invalid_argument("pixel outside image bounds");
  }
  const Eigen::Vector3d ray_camera((pixel.x() - k.cx) / k.fx,
                                   (pixel.y() - k.cy) / k.fy, 1.0);
  const Eigen::Vector3d ray = camera.rotation * ray_camera;
  const double height = ground_z - camera.position.z();
  if (ray.z() == 0.0) return std::nullopt;
  const double t = height / ray.z();
  if (!(t > 0.0) || !std::isfinite(t)) return std::nullopt;
  Eigen::Vector3d point = camera.position + t * ray;
  point.z() = ground_z;
  return point;
}

std::optional<Eigen::Vector2d> project_to_pixel(const CameraModel& camera,
                                                const Eigen::Vector3d& point) {
  const Eigen::Vector3d p =
      camera.rotation.transpose() * (point - camera.position);
  if (!(p.z() > 0.0)) return std::nullopt;
  const CameraIntrinsics& k = camera.intrinsics;
  return Eigen::Vector2d(k.fx * p.x() / p.z() + k.cx,
                         k.fy * p.y() / p.z() + k.cy);
}

}  // namespace forecast
}  // namespace aerocine
