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

#include <limits>
#include <vector>

#include "aerocine/itsdt/signed_distance_field.h"

namespace aerocine {
namespace itsdt {
namespace {

constexpr int64_t kInfinity = std::numeric_limits<int64_t>::max() / 4;

// Lower envelope of parabolas (Felzenszwalb & Huttenlocher) over one line of
// the grid, carrying the source border of the winning parabola. `f` and `src`
// are read and then overwritten with the result; `stride` walks the line.
class LineTransform {
 public:
  explicit LineTransform(int max_length)
      : f_(max_length), src_(max_length), v_(max_length), z_(max_length + 1) {}

  void Run(int64_t* f, int32_t* src, int n, int64_t stride) {
    for (int i = 0; i < n; ++i) {
      f_[i] = f[i * stride];
      src_[i] = src[i * stride];
    }
    int k = -1;
    for (int q = 0; q < n; ++q) {
      if (f_[q] >= kInfinity) continue;
      if (k < 0) {
        k = 0;
        v_[0] = q;
        z_[0] = -std::numeric_limits<double>::infinity();
        z_[1] = std::numeric_limits<double>::infinity();
        continue;
      }
      double s = Intersect(q, v_[k]);
      while (s <= z_[k]) {
        --k;
        s = Intersect(q, v_[k]);
      }
      ++k;
      v_[k] = q;
      z_[k] = s;
      z_[k + 1] = std::numeric_limits<double>::infinity();
    }
    if (k < 0) return;  // no finite site on this line
    k = 0;
    for (int q = 0; q < n; ++q) {
      while (z_[k + 1] < q) ++k;
      const int64_t d = q - v_[k];
      f[q * stride] = d * d + f_[v_[k]];
      src[q * stride] = src_[v_[k]];
    }
  }

 private:
  double Intersect(int q, int p) const {
    const double fq = static_cast<double>(f_[q]) + static_cast<double>(q) * q;
    const double fp = static_cast<double>(f_[p]) + static_cast<double>(p) * p;
    return (fq - fp) / (2.0 * (q - p));
  }

  std::vector<int64_t> f_;
  std::vector<int32_t> src_;
  std::vector<int> v_;
  std::vector<double> z_;
};

}  // namespace

SignedDistanceField batch_recompute(const voxel_world::OccupancyGrid& grid,
                                    const SdfConfig& config) {
  SignedDistanceField sdf(grid.config(), config);
  const Eigen::Vector3i dims = grid.dims();
  const int64_t n = grid.num_voxels();

  std::vector<int64_t> f(static_cast<size_t>(n), kInfinity);
  std::vector<int32_t> src(static_cast<size_t>(n), -1);
  int64_t borders = 0;
  for (int z = 0; z < dims.z(); ++z) {
    for (int y = 0; y < dims.y(); ++y) {
      for (int x = 0; x < dims.x(); ++x) {
        const voxel_world::VoxelIndex v(x, y, z);
        if (!IsBorderVoxel(grid, v)) continue;
        const int64_t index = grid.linear_index(v);
        sdf.border_[index] = 1;
        f[index] = 0;
        src[index] = static_cast<int32_t>(index);
        ++borders;
      }
    }
  }
  sdf.border_count_ = borders;

  LineTransform line(dims.maxCoeff());
  const int64_t nx = dims.x();
  const int64_t nxy = nx * dims.y();
  for (int z = 0; z < dims.z(); ++z) {
    for (int y = 0; y < dims.y(); ++y) {
      const int64_t base = z * nxy + y * nx;
      line.Run(&f[base], &src[base], dims.x(), 1);
    }
  }
  for (int z = 0; z < dims.z(); ++z) {
    for (int x = 0; x < dims.x(); ++x) {
      const int64_t base = z * nxy + x;
      line.Run(&f[base], &src[base], dims.y(), nx);
    }
  }
  for (int y = 0; y < dims.y(); ++y) {
    for (int x = 0; x < dims.x(); ++x) {
      const int64_t base = y * nx + x;
      line.Run(&f[base], &src[base], dims.z(), nxy);
    }
  }

  for (int64_t i = 0; i < n; ++i) {
    if (f[i] <= sdf.max_sq_) {
      sdf.sq_[i] = static_cast<int32_t>(f[i]);
      sdf.nearest_[i] = src[i];
    }
  }
  return sdf;
}

}  // namespace itsdt
}  // namespace aerocine
