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

#ifndef AEROCINE_ITSDT_FIELD_SNAPSHOT_H_
#define AEROCINE_ITSDT_FIELD_SNAPSHOT_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "Eigen/Core"
#include "aerocine/voxel_world/occupancy_grid.h"

namespace aerocine {
namespace itsdt {

struct FieldSample {
  double value = 0.0;
  // Exact derivative of the trilinear interpolant (zero outside the span of
  // voxel centers along an axis).
  Eigen::Vector3d gradient = Eigen::Vector3d::Zero();
  bool in_bounds = false;
};

struct GradientQuery {
  Eigen::Vector3d gradient = Eigen::Vector3d::Zero();
  // Set when part of the central-difference stencil left the grid and a
  // one-sided difference was used.
  bool clamped = false;
};

// Frozen copy of per-voxel signed distances. Planning reads from a snapshot
// while the live field keeps integrating scans.
class FieldSnapshot {
 public:
  FieldSnapshot(const voxel_world::GridConfig& grid_config, double truncation,
                std::vector<double> signed_values);

  const voxel_world::GridConfig& grid_config() const { return grid_config_; }
  double truncation() const { return truncation_; }
  const std::vector<double>& signed_values() const { return values_; }

  bool contains(const Eigen::Vector3d& p) const;
  double voxel_value(const voxel_world::VoxelIndex& v) const;

  // Trilinear interpolation over the 8 surrounding voxel centers.
  // Throws std::out_of_range when p is outside the grid.
  double signed_distance_at(const Eigen::Vector3d& p) const;
  // Central differences of signed_distance_at with step resolution / 2.
  // Throws std::out_of_range when p is outside the grid.
  GradientQuery gradient_at(const Eigen::Vector3d& p) const;
  // Value and analytic gradient; points outside the grid read -truncation
  // with zero gradient.
  FieldSample sample(const Eigen::Vector3d& p) const;

 private:
  voxel_world::GridConfig grid_config_;
  double truncation_;
  std::vector<double> values_;
};

namespace detail {

// Trilinear interpolation of per-voxel values at voxel centers. `value_at`
// maps a linear voxel index to its value. Coordinates beyond the outermost
// centers are clamped, so the interpolant is constant there.
template <typename ValueAt>
FieldSample Interpolate(const voxel_world::GridConfig& config,
                        const Eigen::Vector3d& p, const ValueAt& value_at) {
  int lo[3];
  int hi[3];
  double frac[3];
  bool varies[3];
  for (int a = 0; a < 3; ++a) {
    const double u = (p[a] - config.origin[a]) / config.resolution - 0.5;
    const int dim = config.dims[a];
    if (dim == 1) {
      lo[a] = hi[a] = 0;
      frac[a] = 0.0;
      varies[a] = false;
      continue;
    }
    int i0 = static_cast<int>(std::floor(u));
    i0 = std::clamp(i0, 0, dim - 2);
    lo[a] = i0;
    hi[a] = i0 + 1;
    const double f = u - i0;
    varies[a] = u >= 0.0 && u <= dim - 1;
    frac[a] = std::clamp(f, 0.0, 1.0);
  }
  const int64_t nx = config.dims.x();
  const int64_t nxy = nx * config.dims.y();
  double c[2][2][2];
  for (int k = 0; k < 2; ++k) {
    for (int j = 0; j < 2; ++j) {
      for (int i = 0; i < 2; ++i) {
        const int64_t index = (k ? hi[2] : lo[2]) * nxy +
                              (j ? hi[1] : lo[1]) * nx + (i ? hi[0] : lo[0]);
        c[k][j][i] = value_at(index);
      }
    }
  }
  const double fx = frac[0], fy = frac[1], fz = frac[2];
  // Interpolate along x, then y, then z.
  double cx[2][2];
  double dcx[2][2];
  for (int k = 0; k < 2; ++k) {
    for (int j = 0; j < 2; ++j) {
      cx[k][j] = c[k][j][0] + fx * (c[k][j][1] - c[k][j][0]);
      dcx[k][j] = c[k][j][1] - c[k][j][0];
    }
  }
  double cxy[2];
  double dx_xy[2];
  double dy_xy[2];
  for (int k = 0; k < 2; ++k) {
    cxy[k] = cx[k][0] + fy * (cx[k][1] - cx[k][0]);
    dx_xy[k] = dcx[k][0] + fy * (dcx[k][1] - dcx[k][0]);
    dy_xy[k] = cx[k][1] - cx[k][0];
  }
  FieldSample sample;
  sample.in_bounds = true;
  sample.value = cxy[0] + fz * (cxy[1] - cxy[0]);
  const double inv_res = 1.0 / config.resolution;
  sample.gradient.x() =
      varies[0] ? (dx_xy[0] + fz * (dx_xy[1] - dx_xy[0])) * inv_res : 0.0;
  sample.gradient.y() =
      varies[1] ? (dy_xy[0] + fz * (dy_xy[1] - dy_xy[0])) * inv_res : 0.0;
  sample.gradient.z() = varies[2] ? (cxy[1] - cxy[0]) * inv_res : 0.0;
  return sample;
}

bool GridContains(const voxel_world::GridConfig& config,
                  const Eigen::Vector3d& p);

// Central differences of `value` (a callable returning the interpolated
// value at a world point) with step resolution / 2; one-sided where the
// stencil leaves the grid.
template <typename ValueFn>
GradientQuery CentralDifferences(const voxel_world::GridConfig& config,
                                 const Eigen::Vector3d& p,
                                 const ValueFn& value) {
  GradientQuery query;
  const double h = 0.5 * config.resolution;
  const double center = value(p);
  for (int a = 0; a < 3; ++a) {
    Eigen::Vector3d plus = p;
    Eigen::Vector3d minus = p;
    plus[a] += h;
    minus[a] -= h;
    const bool plus_ok = GridContains(config, plus);
    const bool minus_ok = GridContains(config, minus);
    if (plus_ok && minus_ok) {
      query.gradient[a] = (value(plus) - value(minus)) / (2.0 * h);
    } else if (plus_ok) {
      query.gradient[a] = (value(plus) - center) / h;
      query.clamped = true;
    } else if (minus_ok) {
      query.gradient[a] = (center - value(minus)) / h;
      query.clamped = true;
    } else {
      query.gradient[a] = 0.0;
      query.clamped = true;
    }
  }
  return query;
}

}  // namespace detail
}  // namespace itsdt
}  // namespace aerocine

#endif  // AEROCINE_ITSDT_FIELD_SNAPSHOT_H_
