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

#include "aerocine/itsdt/signed_distance_field.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace aerocine {
namespace itsdt {

using voxel_world::ChangeSet;
using voxel_world::GridConfig;
using voxel_world::Occupancy;
using voxel_world::OccupancyGrid;
using voxel_world::VoxelIndex;

void SdfConfig::Validate(double resolution) const {
  if (!(truncation > 0.0) || !std::isfinite(truncation)) {
    throw std::invalid_argument("truncation must be positive");
  }
  if (truncation < 2.0 * resolution) {
    throw std::invalid_argument(
        "truncation must be at least twice the grid resolution");
  }
}

bool IsBorderVoxel(const OccupancyGrid& grid, const VoxelIndex& v) {
  const Occupancy state = grid.classify(v);
  if (state == Occupancy::kOccupied) return true;
  if (state == Occupancy::kFree) return false;
  for (const auto& offset : voxel_world::SixNeighborhood()) {
    const VoxelIndex n = v + offset;
    if (grid.contains(n) && grid.classify(n) == Occupancy::kFree) return true;
  }
  return false;
}

SignedDistanceField::SignedDistanceField(const GridConfig& grid_config,
                                         const SdfConfig& config)
    : grid_config_(grid_config), config_(config) {
  grid_config_.Validate();
  config_.Validate(grid_config_.resolution);

  const double radius = config_.truncation / grid_config_.resolution;
  max_sq_ = static_cast<int32_t>(std::floor(radius * radius + 1e-9));
  none_sq_ = max_sq_ + 1;
  stencil_radius_ = static_cast<int>(std::floor(std::sqrt(max_sq_) + 1e-9));

  const int r = stencil_radius_;
  const int64_t nx = grid_config_.dims.x();
  const int64_t nxy = nx * grid_config_.dims.y();
  for (int dz = -r; dz <= r; ++dz) {
    for (int dy = -r; dy <= r; ++dy) {
      for (int dx = -r; dx <= r; ++dx) {
        const int32_t sq = dx * dx + dy * dy + dz * dz;
        if (sq > max_sq_) continue;
        stencil_.push_back({dx, dy, dz, sq, dz * nxy + dy * nx + dx});
      }
    }
  }
  std::sort(stencil_.begin(), stencil_.end(),
            [](const StencilOffset& a, const StencilOffset& b) {
              if (a.sq != b.sq) return a.sq < b.sq;
              if (a.dz != b.dz) return a.dz < b.dz;
              if (a.dy != b.dy) return a.dy < b.dy;
              return a.dx < b.dx;
            });

  distance_by_sq_.resize(static_cast<size_t>(none_sq_) + 1);
  for (int32_t sq = 0; sq <= max_sq_; ++sq) {
    distance_by_sq_[sq] = std::min(
        config_.truncation, std::sqrt(static_cast<double>(sq)) *
                                grid_config_.resolution);
  }
  distance_by_sq_[none_sq_] = config_.truncation;

  const auto n = static_cast<size_t>(grid_config_.num_voxels());
  sq_.assign(n, none_sq_);
  nearest_.assign(n, -1);
  border_.assign(n, 0);
  mark_.assign(n, 0);
}

double SignedDistanceField::distance(int64_t index) const {
  return distance_by_sq_[sq_[index]];
}

double SignedDistanceField::distance(const VoxelIndex& v) const {
  return distance(Linear(v.x(), v.y(), v.z()));
}

std::optional<int32_t> SignedDistanceField::squared_voxel_distance(
    int64_t index) const {
  if (nearest_[index] < 0) return std::nullopt;
  return sq_[index];
}

std::optional<VoxelIndex> SignedDistanceField::nearest_border(
    const VoxelIndex& v) const {
  const int32_t nearest = nearest_[Linear(v.x(), v.y(), v.z())];
  if (nearest < 0) return std::nullopt;
  const int64_t nx = grid_config_.dims.x();
  const int64_t ny = grid_config_.dims.y();
  return VoxelIndex(static_cast<int>(nearest % nx),
                    static_cast<int>((nearest / nx) % ny),
                    static_cast<int>(nearest / (nx * ny)));
}

bool SignedDistanceField::is_border(const VoxelIndex& v) const {
  return border_[Linear(v.x(), v.y(), v.z())] != 0;
}

std::vector<int64_t> SignedDistanceField::border_set() const {
  std::vector<int64_t> borders;
  borders.reserve(static_cast<size_t>(border_count_));
  for (size_t i = 0; i < border_.size(); ++i) {
    if (border_[i]) borders.push_back(static_cast<int64_t>(i));
  }
  return borders;
}

double SignedDistanceField::signed_value(const OccupancyGrid& grid,
                                         int64_t index) const {
  const double d = distance(index);
  return grid.classify(index) == Occupancy::kFree ? d : -d;
}

FieldSnapshot SignedDistanceField::snapshot(const OccupancyGrid& grid) const {
  std::vector<double> values(sq_.size());
  for (size_t i = 0; i < values.size(); ++i) {
    values[i] = signed_value(grid, static_cast<int64_t>(i));
  }
  return FieldSnapshot(grid_config_, config_.truncation, std::move(values));
}

bool SignedDistanceField::StencilInside(const VoxelIndex& v) const {
  const int r = stencil_radius_;
  return (v.array() >= r).all() &&
         (v.array() < grid_config_.dims.array() - r).all();
}

void SignedDistanceField::Touch(int64_t index) {
  if (mark_[index] == generation_) return;
  mark_[index] = generation_;
  touched_.push_back(index);
  touched_old_.emplace_back(sq_[index], nearest_[index]);
}

VoxelIndex SignedDistanceField::Coords(int64_t index) const {
  const int64_t nx = grid_config_.dims.x();
  const int64_t ny = grid_config_.dims.y();
  return VoxelIndex(static_cast<int>(index % nx),
                    static_cast<int>((index / nx) % ny),
                    static_cast<int>(index / (nx * ny)));
}

bool SignedDistanceField::InGrid(const VoxelIndex& v,
                                 const StencilOffset& o) const {
  const int x = v.x() + o.dx;
  const int y = v.y() + o.dy;
  const int z = v.z() + o.dz;
  return x >= 0 && y >= 0 && z >= 0 && x < grid_config_.dims.x() &&
         y < grid_config_.dims.y() && z < grid_config_.dims.z();
}

void SignedDistanceField::LowerFrom(int64_t border) {
  const VoxelIndex v = Coords(border);
  const bool inside = StencilInside(v);
  const auto border32 = static_cast<int32_t>(border);
  for (const StencilOffset& o : stencil_) {
    if (!inside && !InGrid(v, o)) continue;
    const int64_t index = border + o.delta;
    if (o.sq < sq_[index]) {
      Touch(index);
      sq_[index] = o.sq;
      nearest_[index] = border32;
    }
  }
}

void SignedDistanceField::RaiseFrom(int64_t border) {
  const VoxelIndex v = Coords(border);
  const bool inside = StencilInside(v);
  const auto border32 = static_cast<int32_t>(border);
  for (const StencilOffset& o : stencil_) {
    if (!inside && !InGrid(v, o)) continue;
    const int64_t index = border + o.delta;
    if (nearest_[index] == border32) {
      Touch(index);
      sq_[index] = none_sq_;
      nearest_[index] = -1;
      raised_.push_back(index);
    }
  }
}

void SignedDistanceField::Resolve(int64_t index) {
  const VoxelIndex v = Coords(index);
  const bool inside = StencilInside(v);
  for (const StencilOffset& o : stencil_) {
    // Shells are sorted; nothing further out can beat the current value.
    if (o.sq >= sq_[index]) return;
    if (!inside && !InGrid(v, o)) continue;
    const int64_t candidate = index + o.delta;
    if (border_[candidate]) {
      Touch(index);
      sq_[index] = o.sq;
      nearest_[index] = static_cast<int32_t>(candidate);
      return;
    }
  }
}

int64_t SignedDistanceField::apply_changes(const OccupancyGrid& grid,
                                           const ChangeSet& changes) {
  if (grid.config().dims != grid_config_.dims) {
    throw std::invalid_argument("grid does not match the field geometry");
  }
  for (const auto* list : {&changes.became_occupied, &changes.became_free,
                           &changes.became_unknown}) {
    for (const VoxelIndex& v : *list) {
      if (!grid.contains(v)) {
        throw std::out_of_range("change outside grid: (" +
                                std::to_string(v.x()) + ", " +
                                std::to_string(v.y()) + ", " +
                                std::to_string(v.z()) + ")");
      }
    }
  }
  if (changes.empty()) return 0;

  if (++generation_ == 0) {
    std::fill(mark_.begin(), mark_.end(), 0);
    generation_ = 1;
  }
  touched_.clear();
  touched_old_.clear();
  raised_.clear();

  // Border status depends on a voxel's own class and its 6-neighbors, so
  // every reported voxel and its neighborhood is re-evaluated.
  std::vector<int64_t> dirty;
  const auto visit = [&](const VoxelIndex& v) {
    const int64_t index = grid.linear_index(v);
    if (mark_[index] == generation_) return;
    mark_[index] = generation_;
    dirty.push_back(index);
  };
  for (const auto* list : {&changes.became_occupied, &changes.became_free,
                           &changes.became_unknown}) {
    for (const VoxelIndex& v : *list) {
      visit(v);
      for (const auto& offset : voxel_world::SixNeighborhood()) {
        const VoxelIndex n = v + offset;
        if (grid.contains(n)) visit(n);
      }
    }
  }

  std::vector<int64_t> inserted;
  std::vector<int64_t> removed;
  for (const int64_t index : dirty) {
    const bool now = IsBorderVoxel(grid, Coords(index));
    if (now == (border_[index] != 0)) continue;
    border_[index] = now ? 1 : 0;
    (now ? inserted : removed).push_back(index);
  }
  border_count_ += static_cast<int64_t>(inserted.size()) -
                   static_cast<int64_t>(removed.size());
  if (inserted.empty() && removed.empty()) return 0;

  // The dirty pass borrowed the marks; start a fresh generation for the
  // touched bookkeeping.
  if (++generation_ == 0) {
    std::fill(mark_.begin(), mark_.end(), 0);
    generation_ = 1;
  }
  for (const int64_t border : removed) RaiseFrom(border);
  for (const int64_t border : inserted) LowerFrom(border);
  for (const int64_t index : raised_) Resolve(index);

  int64_t updated = 0;
  for (size_t i = 0; i < touched_.size(); ++i) {
    const int64_t index = touched_[i];
    if (touched_old_[i] != std::make_pair(sq_[index], nearest_[index])) {
      ++updated;
    }
  }
  return updated;
}

double signed_distance_at(const SignedDistanceField& sdf,
                          const OccupancyGrid& grid, const Eigen::Vector3d& p) {
  if (!detail::GridContains(sdf.grid_config(), p)) {
    throw std::out_of_range("query point outside grid");
  }
  return detail::Interpolate(sdf.grid_config(), p, [&](int64_t index) {
           return sdf.signed_value(grid, index);
         }).value;
}

GradientQuery gradient_at(const SignedDistanceField& sdf,
                          const OccupancyGrid& grid, const Eigen::Vector3d& p) {
  if (!detail::GridContains(sdf.grid_config(), p)) {
    throw std::out_of_range("query point outside grid");
  }
  return detail::CentralDifferences(
      sdf.grid_config(), p,
      [&](const Eigen::Vector3d& q) { return signed_distance_at(sdf, grid, q); });
}

}  // namespace itsdt
}  // namespace aerocine
