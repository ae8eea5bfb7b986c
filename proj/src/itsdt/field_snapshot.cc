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

#include "aerocine/itsdt/field_snapshot.h"

#include <stdexcept>

namespace aerocine {
namespace itsdt {

namespace detail {

bool GridContains(const voxel_world::GridConfig& config,
                  const Eigen::Vector3d& p) {
  return (p.array() >= config.origin.array()).all() &&
         (p.array() <= config.max_corner().array()).all();
}

}  // namespace detail

FieldSnapshot::FieldSnapshot(const voxel_world::GridConfig& grid_config,
                             double truncation,
                             std::vector<double> signed_values)
    : grid_config_(grid_config),
      truncation_(truncation),
      values_(std::move(signed_values)) {
  if (static_cast<int64_t>(values_.size()) != grid_config_.num_voxels()) {
    throw std::invalid_argument("snapshot size does not match grid");
  }
}

bool FieldSnapshot::contains(const Eigen::Vector3d& p) const {
  return detail::GridContains(grid_config_, p);
}

double FieldSnapshot::voxel_value(const voxel_world::VoxelIndex& v) const {
  const auto& dims = grid_config_.dims;
  return values_[(static_cast<int64_t>(v.z()) * dims.y() + v.y()) * dims.x() +
                 v.x()];
}

double FieldSnapshot::signed_distance_at(const Eigen::Vector3d& p) const {
  if (!contains(p)) throw std::out_of_range("query point outside grid");
  return detail::Interpolate(grid_config_, p,
                             [this](int64_t i) { return values_[i]; })
      .value;
}

GradientQuery FieldSnapshot::gradient_at(const Eigen::Vector3d& p) const {
  if (!contains(p)) throw std::out_of_range("query point outside grid");
  return detail::CentralDifferences(
      grid_config_, p,
      [this](const Eigen::Vector3d& q) { return signed_distance_at(q); });
}

FieldSample FieldSnapshot::sample(const Eigen::Vector3d& p) const {
  if (!contains(p)) {
    FieldSample outside;
    outside.value = -truncation_;
    return outside;
  }
  return detail::Interpolate(grid_config_, p,
                             [this](int64_t i) { return values_[i]; });
}

}  // namespace itsdt
}  // namespace aerocine
