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

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "Eigen/Geometry"
#include "aerocine/sim/actor_script.h"
#include "aerocine/sim/lidar.h"
#include "aerocine/sim/world.h"
#include "gtest/gtest.h"

namespace aerocine {
namespace sim {
namespace {

constexpr double kPi = std::numbers::pi;

WorldModel OpenWorld(double half_extent, double top) {
  WorldModel world;
  world.bounds_min = Eigen::Vector3d(-half_extent, -half_extent, -1.0);
  world.bounds_max = Eigen::Vector3d(half_extent, half_extent, top);
  return world;
}

// Face-by-face intersection: each of the six face rectangles is tested on
// its own plane.
std::optional<double> FaceOracle(const Box& box, const Eigen::Vector3d& o,
                                 const Eigen::Vector3d& d) {
  std::optional<double> best;
  for (int axis = 0; axis < 3; ++axis) {
    if (d[axis] == 0.0) continue;
    for (const double plane : {box.min[axis], box.max[axis]}) {
      const double t = (plane - o[axis]) / d[axis];
      if (t < 0.0) continue;
      const Eigen::Vector3d p = o + t * d;
      bool inside = true;
      for (int b = 0; b < 3; ++b) {
        if (b == axis) continue;
        inside = inside && p[b] >= box.min[b] - 1e-12 && p[b] <= box.max[b] + 1e-12;
      }
      if (inside && (!best || t < *best)) best = t;
    }
  }
  return best;
}

bool OnSurface(const WorldModel& world, const Eigen::Vector3d& p, double tol) {
  if (std::abs(p.z() - world.ground_z) <= tol) return true;
  for (const Box& b : world.boxes) {
    const bool within = (p.array() >= b.min.array() - tol).all() &&
                        (p.array() <= b.max.array() + tol).all();
    const bool on_face = ((p - b.min).cwiseAbs().minCoeff() <= tol) ||
                         ((p - b.max).cwiseAbs().minCoeff() <= tol);
    if (within && on_face) return true;
  }
  for (const Cylinder& c : world.cylinders) {
    const double r = (p.head<2>() - c.center).norm();
    const bool side = std::abs(r - c.radius) <= tol && p.z() >= c.z_min - tol &&
                      p.z() <= c.z_max + tol;
    const bool cap = r <= c.radius + tol && (std::abs(p.z() - c.z_min) <= tol ||
                                             std::abs(p.z() - c.z_max) <= tol);
    if (side || cap) return true;
  }
  return false;
}

TEST(SimulateScanTest, EmptyWorldMissesAtMaxRange) {
  const WorldModel world = OpenWorld(5000.0, 2000.0);
  LidarModel lidar;
  lidar.beams_per_revolution = 360;
  // At 1 km the ground lies far beyond reach of every beam.
  const SensorPose pose{Eigen::Vector3d(0, 0, 1000.0), 0.3};
  const auto rays = simulate_scan(world, pose, lidar);
  ASSERT_EQ(rays.size(), 360u * 16u);
  for (const auto& ray : rays) {
    EXPECT_FALSE(ray.is_hit);
    EXPECT_NEAR((ray.p_point - ray.p_sensor).norm(), 100.0, 1e-9);
  }
}

TEST(SimulateScanTest, DownwardChannelHitsGroundAtClosedFormRange) {
  WorldModel world = OpenWorld(500.0, 100.0);
  world.ground_z = -0.5;
  LidarModel lidar;
  lidar.beams_per_revolution = 720;
  const double h = 10.0;
  const SensorPose pose{Eigen::Vector3d(3, -4, world.ground_z + h), 0.0};
  const auto rays = simulate_scan(world, pose, lidar);
  const std::vector<double> elevations = lidar.Elevations();
  EXPECT_NEAR(elevations.front(), -15.0 * kPi / 180.0, 1e-15);
  EXPECT_NEAR(elevations.back(), 15.0 * kPi / 180.0, 1e-15);
  for (size_t i = 0; i < rays.size(); ++i) {
    const double e = elevations[i % 16];
    if (e < 0.0 && h / std::sin(-e) <= lidar.max_range) {
      ASSERT_TRUE(rays[i].is_hit);
      EXPECT_NEAR((rays[i].p_point - rays[i].p_sensor).norm(),
                  h / std::sin(-e), 1e-9);
      EXPECT_NEAR(rays[i].p_point.z(), world.ground_z, 1e-9);
    } else {
      EXPECT_FALSE(rays[i].is_hit);
    }
  }
}

TEST(SimulateScanTest, BoxShadowMatchesFaceOracle) {
  WorldModel world = OpenWorld(200.0, 50.0);
  world.ground_z = -100.0;
  world.bounds_min.z() = -101.0;
  Box box{Eigen::Vector3d(10, -3, -2), Eigen::Vector3d(12, 5, 4)};
  world.boxes.push_back(box);
  LidarModel lidar;
  lidar.beams_per_revolution = 900;
  const SensorPose pose{Eigen::Vector3d(0.5, 0.25, 1.0), 0.1};
  const auto rays = simulate_scan(world, pose, lidar);
  const std::vector<double> elevations = lidar.Elevations();
  int hits = 0;
  for (size_t i = 0; i < rays.size(); ++i) {
    const double az = pose.yaw + static_cast<double>(i / 16) * lidar.azimuth_step();
    const double e = elevations[i % 16];
    const Eigen::Vector3d dir(std::cos(e) * std::cos(az),
                              std::cos(e) * std::sin(az), std::sin(e));
    const auto t = FaceOracle(box, pose.position, dir);
    const bool expect_hit = t.has_value() && *t <= lidar.max_range;
    ASSERT_EQ(rays[i].is_hit, expect_hit) << "beam " << i;
    const double range = expect_hit ? *t : lidar.max_range;
    EXPECT_LT((rays[i].p_point - (pose.position + range * dir)).norm(), 1e-9);
    hits += expect_hit;
  }
  EXPECT_GT(hits, 0);
  EXPECT_LT(hits, static_cast<int>(rays.size()) / 4);
}

TEST(SimulateScanTest, HitsLieOnSurfaces) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    WorldModel world = OpenWorld(60.0, 30.0);
    for (int k = 0; k < 6; ++k) {
      const Eigen::Vector3d lo(-50 + 90 * unit(rng), -50 + 90 * unit(rng),
                               -0.5 + 5 * unit(rng));
      world.boxes.push_back(
          {lo, lo + Eigen::Vector3d(1 + 5 * unit(rng), 1 + 5 * unit(rng),
                                    1 + 10 * unit(rng))});
      world.cylinders.push_back({Eigen::Vector2d(-50 + 100 * unit(rng),
                                                 -50 + 100 * unit(rng)),
                                 0.2 + 2 * unit(rng), 0.0, 2 + 15 * unit(rng)});
    }
    world.Validate();
    LidarModel lidar;
    lidar.beams_per_revolution = 360;
    const SensorPose pose{Eigen::Vector3d(0, 0, 2 + 10 * unit(rng)),
                          2 * kPi * unit(rng)};
    if (world.IsOccupied(pose.position)) continue;
    int hits = 0;
    for (const auto& ray : simulate_scan(world, pose, lidar)) {
      if (!ray.is_hit) continue;
      ++hits;
      ASSERT_TRUE(OnSurface(world, ray.p_point, 1e-9))
          << ray.p_point.transpose();
    }
    EXPECT_GT(hits, 0);
  }
}

TEST(SimulateScanTest, Deterministic) {
  WorldModel world = OpenWorld(50.0, 20.0);
  world.cylinders.push_back({Eigen::Vector2d(5, 5), 1.0, 0.0, 8.0});
  LidarModel lidar;
  lidar.beams_per_revolution = 180;
  const SensorPose pose{Eigen::Vector3d(0, 0, 3), 0.0};
  const auto a = simulate_scan(world, pose, lidar);
  const auto b = simulate_scan(world, pose, lidar);
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].p_point, b[i].p_point);
    EXPECT_EQ(a[i].is_hit, b[i].is_hit);
  }
}

TEST(IntersectTest, CylinderAndGroundClosedForm) {
  const Cylinder c{Eigen::Vector2d(10, 0), 2.0, 0.0, 5.0};
  const auto side = IntersectCylinder(c, Eigen::Vector3d(0, 0, 1),
                                      Eigen::Vector3d(1, 0, 0));
  ASSERT_TRUE(side.has_value());
  EXPECT_NEAR(*side, 8.0, 1e-12);
  const auto cap = IntersectCylinder(c, Eigen::Vector3d(10.5, 0, 9),
                                     Eigen::Vector3d(0, 0, -1));
  ASSERT_TRUE(cap.has_value());
  EXPECT_NEAR(*cap, 4.0, 1e-12);
  EXPECT_FALSE(IntersectCylinder(c, Eigen::Vector3d(0, 0, 6),
                                 Eigen::Vector3d(1, 0, 0))
                   .has_value());
  EXPECT_FALSE(IntersectGround(0.0, Eigen::Vector3d(0, 0, 1),
                               Eigen::Vector3d(1, 0, 0))
                   .has_value());
  EXPECT_NEAR(*IntersectGround(0.0, Eigen::Vector3d(0, 0, 3),
                               Eigen::Vector3d(0.6, 0, -0.8)),
              3.75, 1e-12);
}

TEST(WorldModelTest, ValidationAndOccupancy) {
  WorldModel world = OpenWorld(10.0, 10.0);
  world.boxes.push_back({Eigen::Vector3d(1, 1, 0), Eigen::Vector3d(2, 2, 3)});
  EXPECT_NO_THROW(world.Validate());
  EXPECT_TRUE(world.IsOccupied(Eigen::Vector3d(1.5, 1.5, 1)));
  EXPECT_TRUE(world.IsOccupied(Eigen::Vector3d(5, 5, -0.1)));
  EXPECT_FALSE(world.IsOccupied(Eigen::Vector3d(5, 5, 0.1)));
  world.boxes.push_back({Eigen::Vector3d(1, 1, 0), Eigen::Vector3d(20, 2, 3)});
  EXPECT_THROW(world.Validate(), std::invalid_argument);
  world.boxes.pop_back();
  world.cylinders.push_back({Eigen::Vector2d(0, 0), -1.0, 0.0, 1.0});
  EXPECT_THROW(world.Validate(), std::invalid_argument);
}

TEST(RasterizeWorldTest, VoxelCentersInsideObstacles) {
  WorldModel world = OpenWorld(10.0, 10.0);
  world.ground_z = 0.0;
  world.boxes.push_back({Eigen::Vector3d(2, 2, 0), Eigen::Vector3d(4, 3, 2)});
  voxel_world::GridConfig config;
  config.dims = Eigen::Vector3i(8, 8, 4);
  config.origin = Eigen::Vector3d(0, 0, -0.5);
  config.resolution = 1.0;
  const auto grid = rasterize_world(world, config);
  for (int64_t i = 0; i < grid.num_voxels(); ++i) {
    const Eigen::Vector3d c = grid.voxel_center(grid.voxel_index(i));
    const bool expected = c.z() <= 0.0 || (c.x() >= 2 && c.x() <= 4 &&
                                           c.y() >= 2 && c.y() <= 3 &&
                                           c.z() <= 2);
    EXPECT_EQ(grid.value(i), expected ? 255 : 0) << c.transpose();
  }
}

TEST(ActorPoseTest, CircleOfPublishedDiameter) {
  ScriptedActor actor;
  actor.type = PathType::kCircle;
  actor.center = Eigen::Vector3d(50, 50, 1);
  actor.radius = 18.3 / 2.0;
  actor.speed = 1.2;
  actor.laps = 1.0;
  actor.start_angle = 0.4;
  EXPECT_NEAR(actor.Length(), kPi * 18.3, 1e-12);
  for (double t = 0.0; t < actor.EndTime(); t += 0.37) {
    const auto obs = actor_pose_at(actor, t);
    const Eigen::Vector3d r = obs.position - actor.center;
    EXPECT_NEAR(r.norm(), 9.15, 1e-12);
    const Eigen::Vector3d tangent(std::cos(obs.heading), std::sin(obs.heading), 0);
    EXPECT_NEAR(tangent.dot(r), 0.0, 1e-9);
    EXPECT_GT(r.cross(tangent).z(), 0.0);
  }
  actor.counterclockwise = false;
  const auto obs = actor_pose_at(actor, 3.0);
  const Eigen::Vector3d r = obs.position - actor.center;
  EXPECT_LT(r.cross(Eigen::Vector3d(std::cos(obs.heading),
                                    std::sin(obs.heading), 0)).z(), 0.0);
}

TEST(ActorPoseTest, OutAndBackPathLength) {
  ScriptedActor actor;
  actor.points = {Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(20.3, 0, 0),
                  Eigen::Vector3d(0, 0, 0)};
  actor.speed = 1.0;
  EXPECT_NEAR(actor.Length(), 40.6, 1e-12);
  EXPECT_NEAR(actor.EndTime(), 40.6, 1e-12);
  // Cumulative travelled distance over fine steps.
  double travelled = 0.0;
  Eigen::Vector3d last = actor_pose_at(actor, 0.0).position;
  for (int k = 1; k <= 4060; ++k) {
    const Eigen::Vector3d p = actor_pose_at(actor, k * 0.01).position;
    travelled += (p - last).norm();
    last = p;
  }
  EXPECT_NEAR(travelled, 40.6, 0.02);
  EXPECT_NEAR(actor_pose_at(actor, 10.0).position.x(), 10.0, 1e-12);
  EXPECT_NEAR(actor_pose_at(actor, 30.0).position.x(), 10.6, 1e-12);
  EXPECT_NEAR(actor_pose_at(actor, 10.0).heading, 0.0, 1e-12);
  EXPECT_NEAR(std::abs(actor_pose_at(actor, 30.0).heading), kPi, 1e-12);
  EXPECT_EQ(actor_pose_at(actor, 100.0).position, Eigen::Vector3d::Zero());
  EXPECT_THROW(actor_pose_at(actor, -0.1), std::invalid_argument);
}

TEST(ActorPoseTest, ZeroSpeedAndStartTime) {
  ScriptedActor actor;
  actor.points = {Eigen::Vector3d(1, 2, 0), Eigen::Vector3d(5, 2, 0)};
  actor.speed = 0.0;
  for (const double t : {0.0, 1.0, 50.0}) {
    EXPECT_EQ(actor_pose_at(actor, t).position, Eigen::Vector3d(1, 2, 0));
  }
  actor.speed = 2.0;
  actor.start_time = 3.0;
  EXPECT_EQ(actor_pose_at(actor, 2.0).position, Eigen::Vector3d(1, 2, 0));
  EXPECT_NEAR(actor_pose_at(actor, 4.0).position.x(), 3.0, 1e-12);
}

TEST(PerturbObservationTest, ZeroAmplitudeAndDeterminism) {
  const forecast::ActorObservation obs{1.0, Eigen::Vector3d(3, 4, 1), 0.5};
  const auto same = perturb_observation(obs, 0.0, 42);
  EXPECT_EQ(same.position, obs.position);
  EXPECT_EQ(same.heading, obs.heading);
  const auto a = perturb_observation(obs, 1.0, 42);
  const auto b = perturb_observation(obs, 1.0, 42);
  EXPECT_EQ(a.position, b.position);
  EXPECT_NE(a.position, perturb_observation(obs, 1.0, 43).position);
  EXPECT_EQ(a.position.z(), obs.position.z());
  EXPECT_THROW(perturb_observation(obs, -1.0, 1), std::invalid_argument);
}

TEST(PerturbObservationTest, UniformNoiseStatistics) {
  const forecast::ActorObservation obs{0.0, Eigen::Vector3d(10, -5, 0), 0.0};
  Eigen::Vector2d sum = Eigen::Vector2d::Zero();
  Eigen::Vector2d max_abs = Eigen::Vector2d::Zero();
  const int n = 100000;
  for (int k = 0; k < n; ++k) {
    const Eigen::Vector2d off =
        (perturb_observation(obs, 1.0, k).position - obs.position).head<2>();
    sum += off;
    max_abs = max_abs.cwiseMax(off.cwiseAbs());
  }
  EXPECT_LE(max_abs.maxCoeff(), 1.0);
  EXPECT_GT(max_abs.minCoeff(), 0.99);
  EXPECT_LT((sum / n).cwiseAbs().maxCoeff(), 0.01);
}

TEST(ScanRecordTest, RoundTrip) {
  WorldModel world = OpenWorld(50.0, 20.0);
  LidarModel lidar;
  lidar.beams_per_revolution = 36;
  const auto rays =
      simulate_scan(world, SensorPose{Eigen::Vector3d(0, 0, 5), 0.0}, lidar);
  std::stringstream stream;
  WriteScanRecords(stream, 1.5, rays);
  EXPECT_EQ(stream.str().size(), rays.size() * 33);
  const auto records = ReadScanRecords(stream);
  ASSERT_EQ(records.size(), rays.size());
  for (size_t i = 0; i < rays.size(); ++i) {
    EXPECT_EQ(records[i].t, 1.5);
    EXPECT_EQ(records[i].point, rays[i].p_point);
    EXPECT_EQ(records[i].is_hit, rays[i].is_hit);
  }
  std::stringstream truncated(stream.str().substr(0, 40));
  EXPECT_THROW(ReadScanRecords(truncated), std::runtime_error);
}

TEST(JitterPoseTest, SeededAndZeroSigma) {
  const SensorPose pose{Eigen::Vector3d(1, 2, 3), 0.5};
  std::mt19937_64 a(5);
  std::mt19937_64 b(5);
  EXPECT_EQ(JitterPose(pose, 0.25, &a).position, JitterPose(pose, 0.25, &b).position);
  std::mt19937_64 c(5);
  EXPECT_EQ(JitterPose(pose, 0.0, &c).position, pose.position);
}

}  // namespace
}  // namespace sim
}  // namespace aerocine
