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

#include "aerocine/runner/closed_loop.h"

#include <chrono>
#include <future>
#include <optional>
#include <random>
#include <stdexcept>

#include "aerocine/forecast/camera.h"
#include "aerocine/forecast/observation_io.h"
#include "aerocine/itsdt/signed_distance_field.h"
#include "aerocine/planner/costs.h"
#include "aerocine/planner/optimizer.h"
#include "aerocine/sim/lidar.h"
#include "aerocine/voxel_world/ray_update.h"

namespace aerocine {
namespace runner {
namespace {

using Clock = std::chrono::steady_clock;

constexpr int kClearanceSamples = 4;

double MsSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

uint64_t SampleSeed(uint64_t seed, int cycle, int sample) {
  return ((seed * 0x100000001b3ULL) ^ static_cast<uint64_t>(cycle)) * 4096 +
         static_cast<uint64_t>(sample);
}

bool SameField(const itsdt::SignedDistanceField& a,
               const itsdt::SignedDistanceField& b) {
  if (a.border_set() != b.border_set()) return false;
  for (int64_t i = 0; i < a.num_voxels(); ++i) {
    if (a.squared_voxel_distance(i) != b.squared_voxel_distance(i)) {
      return false;
    }
  }
  return true;
}

// Online occupancy grid and distance field fed by simulated scans.
class OnlineMap {
 public:
  OnlineMap(const Scenario& scenario, const RunOptions& options,
            RunResult* result)
      : scenario_(scenario),
        options_(options),
        result_(result),
        grid_(scenario.grid),
        sdf_(scenario.grid, scenario.sdf),
        rng_(scenario.seed) {}

  const voxel_world::OccupancyGrid& grid() const { return grid_; }
  const itsdt::SignedDistanceField& sdf() const { return sdf_; }

  struct Update {
    int64_t rays = 0;
    int64_t changes = 0;
    int64_t updated_voxels = 0;
    double scan_ms = 0.0;
    double integrate_ms = 0.0;
    double sdf_ms = 0.0;
  };

  Update Scan(const Eigen::Vector3d& position, const std::string& phase,
              int index, double t) {
    Update update;
    auto start = Clock::now();
    sim::SensorPose pose;
    pose.position = position;
    std::vector<voxel_world::RayMeasurement> rays =
        sim::simulate_scan(scenario_.world, pose, scenario_.lidar);
    if (scenario_.pose_jitter > 0.0) {
      // Registration error shifts the whole scan.
      const Eigen::Vector3d offset =
          sim::JitterPose(pose, scenario_.pose_jitter, &rng_).position -
          position;
      for (auto& ray : rays) {
        ray.p_sensor += offset;
        ray.p_point += offset;
      }
    }
    if (options_.scan_dump != nullptr) {
      sim::WriteScanRecords(*options_.scan_dump, t, rays);
    }
    update.scan_ms = MsSince(start);

    start = Clock::now();
    const voxel_world::ChangeSet changes =
        voxel_world::integrate_scan(&grid_, rays);
    update.integrate_ms = MsSince(start);

    start = Clock::now();
    update.updated_voxels = sdf_.apply_changes(grid_, changes);
    update.sdf_ms = MsSince(start);
    update.rays = static_cast<int64_t>(rays.size());
    update.changes = static_cast<int64_t>(changes.size());

    MapRecord record;
    record.phase = phase;
    record.index = index;
    record.t = t;
    record.rays = update.rays;
    record.changes = update.changes;
    record.updated_voxels = update.updated_voxels;
    record.border_count = sdf_.border_count();
    MapTiming timing;
    timing.integrate_ms = update.integrate_ms;
    timing.sdf_ms = update.sdf_ms;
    const int count = static_cast<int>(result_->map_updates.size());
    if (options_.batch_every > 0 && count % options_.batch_every == 0) {
      start = Clock::now();
      const itsdt::SignedDistanceField batch =
          itsdt::batch_recompute(grid_, scenario_.sdf);
      timing.batch_ms = MsSince(start);
      record.batch_checked = true;
      record.batch_match = SameField(batch, sdf_);
    }
    result_->map_updates.push_back(record);
    result_->map_timings.push_back(timing);
    return update;
  }

  void Takeoff() {
    const TakeoffSweep& sweep = scenario_.takeoff;
    if (sweep.top_altitude <= 0.0) return;
    int index = 0;
    for (double alt = sweep.start_altitude;
         alt <= sweep.top_altitude + 1e-9; alt += sweep.step, ++index) {
      const Eigen::Vector3d p(scenario_.drone_start.x(),
                              scenario_.drone_start.y(),
                              scenario_.world.ground_z + alt);
      Scan(p, "takeoff", index, 0.0);
    }
  }

 private:
  const Scenario& scenario_;
  const RunOptions& options_;
  RunResult* result_;
  voxel_world::OccupancyGrid grid_;
  itsdt::SignedDistanceField sdf_;
  std::mt19937_64 rng_;
};

// Camera observation of the actor's ground contact point, back-projected
// onto the ground plane.
std::optional<forecast::ActorObservation> ObserveActor(
    const Scenario& scenario, const forecast::ActorObservation& truth,
    const Eigen::Vector3d& drone) {
  const double ground_z = scenario.world.ground_z;
  const Eigen::Vector3d contact(truth.position.x(), truth.position.y(),
                                ground_z);
  if ((truth.position - drone).norm() < 1e-6) return std::nullopt;
  const forecast::CameraModel camera =
      forecast::CameraModel::LookingAt(drone, truth.position, scenario.camera);
  const std::optional<Eigen::Vector2d> pixel =
      forecast::project_to_pixel(camera, contact);
  if (!pixel || !scenario.camera.Contains(*pixel)) return std::nullopt;
  const std::optional<Eigen::Vector3d> ground =
      forecast::project_pixel_to_ground(camera, *pixel, ground_z);
  if (!ground) return std::nullopt;
  forecast::ActorObservation obs = truth;
  obs.position = *ground;
  obs.position.z() = truth.position.z();
  return obs;
}

planner::Trajectory WarmStart(const planner::Trajectory& previous, int shift) {
  planner::Trajectory next = previous;
  const int n = previous.size();
  const Eigen::RowVector3d last = previous.positions.row(n - 1);
  const Eigen::RowVector3d velocity = last - previous.positions.row(n - 2);
  next.positions.topRows(n - shift) = previous.positions.bottomRows(n - shift);
  for (int j = 1; j <= shift; ++j) {
    next.positions.row(n - shift - 1 + j) = last + j * velocity;
  }
  return next;
}

}  // namespace

forecast::ActorForecast ScriptedForecast(const sim::ScriptedActor& actor,
                                         double t, int samples, double dt) {
  forecast::ActorForecast out;
  out.times.resize(samples);
  out.positions.resize(samples, 3);
  out.headings.resize(samples);
  for (int k = 0; k < samples; ++k) {
    const double tk = t + k * dt;
    const forecast::ActorObservation pose = sim::actor_pose_at(actor, tk);
    out.times[k] = tk;
    out.positions.row(k) = pose.position.transpose();
    out.headings[k] = pose.heading;
  }
  return out;
}

RunResult RunClosedLoop(const Scenario& scenario, const RunMode& mode,
                        const RunOptions& options) {
  scenario.Validate();
  RunResult result;
  const planner::PlannerConfig& config = scenario.planner;
  const int n = config.waypoints;
  const double dt = config.waypoint_dt();
  const int shift = scenario.waypoints_per_cycle();
  const bool online = mode.map == MapSource::kOnline;

  std::optional<OnlineMap> map;
  std::optional<itsdt::FieldSnapshot> ground_truth;
  if (online) {
    map.emplace(scenario, options, &result);
    map->Takeoff();
  } else {
    const voxel_world::OccupancyGrid grid =
        sim::rasterize_world(scenario.world, scenario.grid);
    ground_truth.emplace(
        itsdt::batch_recompute(grid, scenario.sdf).snapshot(grid));
  }

  std::optional<forecast::ActorFilter> filter;
  Eigen::Vector3d drone = scenario.drone_start;
  std::optional<planner::Trajectory> previous;

  for (int c = 0; c < scenario.cycle_count(); ++c) {
    const double t = c * scenario.cycle_period;
    CycleRecord record;
    CycleTiming timing;
    record.cycle = c;
    timing.cycle = c;
    record.t = t;
    record.drone = drone;
    const forecast::ActorObservation truth =
        sim::actor_pose_at(scenario.actor, t);
    record.actor = truth.position;

    const auto cycle_start = Clock::now();
    std::optional<itsdt::FieldSnapshot> live;
    std::future<OnlineMap::Update> lane;
    OnlineMap::Update update;
    if (online) {
      if (options.two_lane) {
        auto start = Clock::now();
        live.emplace(map->sdf().snapshot(map->grid()));
        timing.snapshot_ms = MsSince(start);
        lane = std::async(std::launch::async, [&map, &drone, c, t] {
          return map->Scan(drone, "flight", c, t);
        });
      } else {
        update = map->Scan(drone, "flight", c, t);
        auto start = Clock::now();
        live.emplace(map->sdf().snapshot(map->grid()));
        timing.snapshot_ms = MsSince(start);
      }
    }
    const itsdt::FieldSnapshot& field = online ? *live : *ground_truth;

    auto start = Clock::now();
    forecast::ActorForecast actor;
    std::optional<forecast::ActorObservation> observed;
    switch (mode.actor) {
      case ActorSource::kGroundTruth:
        actor = ScriptedForecast(scenario.actor, t, n, dt);
        break;
      case ActorSource::kNoisy:
        actor = ScriptedForecast(scenario.actor, t, n, dt);
        for (int k = 0; k < n; ++k) {
          forecast::ActorObservation sample;
          sample.timestamp = actor.times[k];
          sample.position = actor.positions.row(k).transpose();
          sample.heading = actor.headings[k];
          sample = sim::perturb_observation(sample, mode.noise_amplitude,
                                            SampleSeed(scenario.seed, c, k));
          actor.positions.row(k) = sample.position.transpose();
        }
        break;
      case ActorSource::kFiltered:
        observed = ObserveActor(scenario, truth, drone);
        if (!filter) {
          filter.emplace(scenario.actor.kind, observed ? *observed : truth,
                         forecast::DefaultNoise(scenario.actor.kind));
        } else {
          *filter = forecast::kf_step(*filter, scenario.cycle_period, observed);
        }
        actor = forecast::forecast(*filter, config.horizon, dt);
        break;
    }
    if (mode.actor != ActorSource::kFiltered) {
      forecast::ActorObservation first;
      first.timestamp = t;
      first.position = actor.positions.row(0).transpose();
      first.heading = actor.headings[0];
      observed = first;
    }
    timing.forecast_ms = MsSince(start);
    if (options.observation_dump != nullptr && observed) {
      forecast::WriteObservations(*options.observation_dump,
                                  std::span(&*observed, 1));
    }

    planner::Trajectory initial =
        previous ? WarmStart(*previous, shift)
                 : planner::Trajectory::Constant(drone, n, config.horizon);
    planner::UpdateHeadings(actor, &initial);
    start = Clock::now();
    const planner::PlanResult planned =
        planner::plan(initial, actor, scenario.shot, field, config);
    timing.plan_ms = MsSince(start);

    if (online && options.two_lane) update = lane.get();
    timing.scan_ms = update.scan_ms;
    timing.integrate_ms = update.integrate_ms;
    timing.sdf_ms = update.sdf_ms;
    timing.cycle_ms = MsSince(cycle_start) - update.scan_ms;

    const planner::PlanDiagnostics& d = planned.diagnostics;
    record.iterations = d.iterations;
    record.converged = d.converged;
    record.plan_error = d.error;
    record.cost = d.cost;
    record.smooth = d.smooth;
    record.shot = d.shot;
    record.obs = d.obs;
    record.occ = d.occ;
    record.init_clearance =
        planner::MinSignedDistance(initial, field, kClearanceSamples);
    record.plan_clearance = planner::MinSignedDistance(
        planned.trajectory, field, kClearanceSamples);
    record.rays = update.rays;
    record.changes = update.changes;
    record.updated_voxels = update.updated_voxels;
    record.drone_heading = planned.trajectory.headings[0];
    result.cycles.push_back(record);
    result.timings.push_back(timing);

    drone = planned.trajectory.positions.row(shift).transpose();
    previous = planned.trajectory;
  }
  return result;
}

}  // namespace runner
}  // namespace aerocine
