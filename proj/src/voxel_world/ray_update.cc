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

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "aerocine/voxel_world/ray_update.h"

namespace aerocine {
namespace voxel_world {
namespace {

uint8_t Saturate(int value) {
  return static_cast<uint8_t>(std::clamp(value, 0, 255));
}

enum class ChangeList : uint8_t { kOccupied, kFree, kUnknown };

// Applies one ray to the grid and appends its deduplicated transitions.
// `traversal` and `newly_free` are scratch buffers owned by the caller.
void UpdateRayInto(OccupancyGrid* grid, const RayMeasurement& ray,
                   ClippedTraversal* traversal,
                   std::vector<int64_t>* newly_free, ChangeSet* changes) {
  const GridConfig& config = grid->config();
  traverse_ray_clipped(ray.p_sensor, ray.p_point, config, traversal);
  const auto& voxels = traversal->voxels;
  if (voxels.empty()) return;

  newly_free->clear();
  const size_t last = voxels.size() - 1;
  for (size_t i = 0; i < voxels.size(); ++i) {
    const bool is_endpoint = traversal->endpoint_in_grid && i == last;
    if (is_endpoint && !ray.is_hit) continue;

    const int64_t index = grid->linear_index(voxels[i]);
    const uint8_t before = grid->value(index);
    int value = before - config.l_free;
    if (is_endpoint) {
      // Decrement first, then add the hit evidence.
      value = std::clamp(value, 0, 255) + config.l_occ;
    }
    const uint8_t after = Saturate(value);
    grid->set_value(index, after);

    const Occupancy was = grid->classify_value(before);
    const Occupancy now = grid->classify_value(after);
    if (was == now) continue;
    switch (now) {
      case Occupancy::kFree:
        changes->became_free.push_back(voxels[i]);
        newly_free->push_back(index);
        break;
      case Occupancy::kOccupied:
        changes->became_occupied.push_back(voxels[i]);
        break;
      case Occupancy::kUnknown:
        changes->became_unknown.push_back(voxels[i]);
        break;
    }
  }

  if (newly_free->empty()) return;
  // Unknown neighbors of newly free voxels become border candidates. They are
  // evaluated on the post-update grid so the lists stay disjoint.
  std::unordered_set<int64_t> listed;
  for (const auto& v : changes->became_occupied) {
    listed.insert(grid->linear_index(v));
  }
  for (const int64_t index : *newly_free) {
    const VoxelIndex v = grid->voxel_index(index);
    for (const auto& offset : SixNeighborhood()) {
      const VoxelIndex n = v + offset;
      if (!grid->contains(n)) continue;
      const int64_t n_index = grid->linear_index(n);
      if (grid->classify(n_index) != Occupancy::kUnknown) continue;
      if (listed.insert(n_index).second) {
        changes->became_occupied.push_back(n);
      }
    }
  }
}

}  // namespace

ChangeSet update_ray(OccupancyGrid* grid, const RayMeasurement& ray) {
  ChangeSet changes;
  ClippedTraversal traversal;
  std::vector<int64_t> newly_free;
  UpdateRayInto(grid, ray, &traversal, &newly_free, &changes);
  return changes;
}

ChangeSet integrate_scan(OccupancyGrid* grid,
                         const std::vector<RayMeasurement>& rays) {
  struct Entry {
    ChangeList list;
    VoxelIndex voxel;
  };
  // Order of first appearance keeps the output deterministic.
  std::vector<int64_t> order;
  std::unordered_map<int64_t, Entry> latest;

  ClippedTraversal traversal;
  std::vector<int64_t> newly_free;
  ChangeSet per_ray;
  const auto record = [&](const std::vector<VoxelIndex>& voxels,
                          ChangeList list) {
    for (const auto& v : voxels) {
      const int64_t index = grid->linear_index(v);
      auto [it, inserted] = latest.try_emplace(index, Entry{list, v});
      if (inserted) {
        order.push_back(index);
      } else {
        it->second.list = list;
      }
    }
  };

  for (const auto& ray : rays) {
    per_ray.became_occupied.clear();
    per_ray.became_free.clear();
    per_ray.became_unknown.clear();
    UpdateRayInto(grid, ray, &traversal, &newly_free, &per_ray);
    record(per_ray.became_free, ChangeList::kFree);
    record(per_ray.became_occupied, ChangeList::kOccupied);
    record(per_ray.became_unknown, ChangeList::kUnknown);
  }

  ChangeSet merged;
  for (const int64_t index : order) {
    const Entry& entry = latest.at(index);
    switch (entry.list) {
      case ChangeList::kOccupied:
        merged.became_occupied.push_back(entry.voxel);
        break;
      case ChangeList::kFree:
        merged.became_free.push_back(entry.voxel);
        break;
      case ChangeList::kUnknown:
        merged.became_unknown.push_back(entry.voxel);
        break;
    }
  }
  return merged;
}

}  // namespace voxel_world
}  // namespace aerocine
