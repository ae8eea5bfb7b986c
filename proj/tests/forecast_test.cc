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
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "Eigen/Eigenvalues"
#include "Eigen/LU"
#include "aerocine/forecast/actor_filter.h"
#include "aerocine/forecast/camera.h"
#include "aerocine/forecast/observation_io.h"
#include "gtest/gtest.h"

namespace aerocine {
namespace forecast {
namespace {

constexpr double kPi = std::numbers::pi;

CameraModel DownwardCamera(double height) {
  CameraModel camera;
  camera.position = Eigen::Vector3d(3.0, -2.0, height);
  camera.rotation = CameraModel::OrientationFromYawPitch(0.7, kPi / 2.0);
  return camera;
}

TEST(ProjectPixelToGroundTest, StraightDown) {
  const CameraModel camera = DownwardCamera(12.0);
  const auto point = project_pixel_to_ground(
      camera, Eigen::Vector2d(camera.intrinsics.cx, camera.intrinsics.cy), 0.5);
  ASSERT_TRUE(point.has_value());
  EXPECT_NEAR(point->x(), 3.0, 1e-12);
  EXPECT_NEAR(point->y(), -2.0, 1e-12);
  EXPECT_EQ(point->z(), 0.5);
}

TEST(ProjectPixelToGroundTest, FortyFiveDegreePitch) {
  const double h = 7.5;
  const double yaw = 2.1;
  CameraModel camera;
  camera.position = Eigen::Vector3d(1.0, 1.0, h);
  camera.rotation = CameraModel::OrientationFromYawPitch(yaw, kPi / 4.0);
  const auto point = project_pixel_to_ground(
      camera, Eigen::Vector2d(camera.intrinsics.cx, camera.intrinsics.cy), 0.0);
  ASSERT_TRUE(point.has_value());
  EXPECT_NEAR(point->x(), 1.0 + h * std::cos(yaw), 1e-12);
  EXPECT_NEAR(point->y(), 1.0 + h * std::sin(yaw), 1e-12);
}

TEST(ProjectPixelToGroundTest, RayAtOrAboveHorizon) {
  CameraModel camera;
  camera.position = Eigen::Vector3d(0.0, 0.0, 5.0);
  camera.rotation = CameraModel::OrientationFromYawPitch(0.0, 0.0);
  const Eigen::Vector2d center(camera.intrinsics.cx, camera.intrinsics.cy);
  EXPECT_FALSE(project_pixel_to_ground(camera, center, 0.0).has_value());
  EXPECT_FALSE(
      project_pixel_to_ground(camera, Eigen::Vector2d(640.0, 0.0), 0.0)
          .has_value());
  EXPECT_THROW(
      project_pixel_to_ground(camera, Eigen::Vector2d(-1.0, 10.0), 0.0),
      std::invalid_argument);
}

TEST(ProjectPixelToGroundTest, RoundTripOverRandomPoses) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int checked = 0;
  while (checked < 1000) {
    const double ground_z = -2.0 + 4.0 * unit(rng);
    const Eigen::Vector3d position(-50.0 + 100.0 * unit(rng),
                                   -50.0 + 100.0 * unit(rng),
                                   ground_z + 1.0 + 60.0 * unit(rng));
    const Eigen::Vector3d target(position.x() - 30.0 + 60.0 * unit(rng),
                                 position.y() - 30.0 + 60.0 * unit(rng),
                                 ground_z);
    const CameraModel camera =
        CameraModel::LookingAt(position, target, CameraIntrinsics{});
    const double cx = camera.intrinsics.width * unit(rng);
    const double cy = camera.intrinsics.height * unit(rng);
    const auto hit = project_pixel_to_ground(camera, Eigen::Vector2d(cx, cy),
                                             ground_z);
    if (!hit.has_value()) continue;
    // Forward-project the ground point, then back-project the pixel.
    const auto pixel = project_to_pixel(camera, *hit);
    ASSERT_TRUE(pixel.has_value());
    if (!camera.intrinsics.Contains(*pixel)) continue;
    const auto back = project_pixel_to_ground(camera, *pixel, ground_z);
    ASSERT_TRUE(back.has_value());
    EXPECT_LT((*back - *hit).norm(), 1e-9);
    ++checked;
  }
}

TEST(CameraIntrinsicsTest, Validation) {
  CameraIntrinsics k;
  EXPECT_NO_THROW(k.Validate());
  k.fx = 0.0;
  EXPECT_THROW(k.Validate(), std::invalid_argument);
  k = CameraIntrinsics{};
  k.cx = 2000.0;
  EXPECT_THROW(k.Validate(), std::invalid_argument);
}

TEST(NormalizeAngleTest, HalfOpenRange) {
  EXPECT_DOUBLE_EQ(NormalizeAngle(kPi), -kPi);
  EXPECT_DOUBLE_EQ(NormalizeAngle(-kPi), -kPi);
  EXPECT_NEAR(NormalizeAngle(3.0 * kPi + 0.5), -kPi + 0.5, 1e-12);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> angle(-100.0, 100.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = NormalizeAngle(angle(rng));
    EXPECT_GE(a, -kPi);
    EXPECT_LT(a, kPi);
  }
}

// Textbook constant-velocity Kalman filter on (x, y, z, vx, vy).
struct TextbookKf {
  Eigen::Matrix<double, 5, 1> x;
  Eigen::Matrix<double, 5, 5> p;
  double accel_var;
  double meas_var;

  void Step(double dt, const Eigen::Vector3d& z) {
    Eigen::Matrix<double, 5, 5> f = Eigen::Matrix<double, 5, 5>::Identity();
    f(0, 3) = dt;
    f(1, 4) = dt;
    // Discrete white-noise acceleration: Q = G G^T sigma^2.
    Eigen::Matrix<double, 5, 3> g = Eigen::Matrix<double, 5, 3>::Zero();
    g(0, 0) = g(1, 1) = g(2, 2) = dt * dt / 2.0;
    g(3, 0) = g(4, 1) = dt;
    x = f * x;
    p = f * p * f.transpose() + g * g.transpose() * accel_var;
    Eigen::Matrix<double, 3, 5> h = Eigen::Matrix<double, 3, 5>::Zero();
    h.leftCols<3>().setIdentity();
    const Eigen::Matrix3d s =
        h * p * h.transpose() + Eigen::Matrix3d::Identity() * meas_var;
    const Eigen::Matrix<double, 5, 3> k = p * h.transpose() * s.inverse();
    x = x + k * (z - h * x);
    p = (Eigen::Matrix<double, 5, 5>::Identity() - k * h) * p;
  }
};

ActorObservation Obs(double t, const Eigen::Vector3d& p, double psi = 0.0) {
  return ActorObservation{t, p, psi};
}

TEST(ActorFilterTest, ConstantVelocityMatchesTextbookRecursion) {
  FilterNoise noise = DefaultNoise(ActorKind::kPerson);
  noise.measurement_sigma = 0.01;
  const Eigen::Vector3d start(4.0, -1.0, 1.0);
  ActorFilter filter(ActorKind::kPerson, Obs(0.0, start), noise);

  TextbookKf oracle;
  oracle.x << start, 0.0, 0.0;
  oracle.p = Eigen::Matrix<double, 5, 1>(1e-4, 1e-4, 1e-4, 100.0, 100.0)
                 .asDiagonal();
  oracle.accel_var = 1.0;
  oracle.meas_var = 1e-4;

  const double dt = 0.2;
  for (int k = 1; k <= 20; ++k) {
    const Eigen::Vector3d z = start + Eigen::Vector3d(2.0, 0.0, 0.0) * k * dt;
    filter = kf_step(filter, dt, Obs(k * dt, z));
    oracle.Step(dt, z);
    for (int i = 0; i < 5; ++i) {
      ASSERT_NEAR(filter.state()[i], oracle.x[i], 1e-9) << "step " << k;
    }
  }
  EXPECT_LT((filter.velocity() - Eigen::Vector3d(2.0, 0.0, 0.0)).norm(), 1e-6);
  EXPECT_NEAR(filter.time(), 4.0, 1e-12);
  EXPECT_NEAR(filter.heading(), 0.0, 1e-9);
}

TEST(ActorFilterTest, StationaryActorConverges) {
  const Eigen::Vector3d p(10.0, 5.0, 0.0);
  ActorFilter filter(ActorKind::kPerson, Obs(0.0, Eigen::Vector3d(9.0, 5.5, 0.0)),
                     DefaultNoise(ActorKind::kPerson));
  for (int k = 1; k <= 300; ++k) filter = kf_step(filter, 0.2, Obs(k * 0.2, p));
  EXPECT_LT((filter.position() - p).norm(), 1e-6);
  EXPECT_LT(filter.velocity().norm(), 1e-6);
}

TEST(ActorFilterTest, PredictComposition) {
  FilterNoise noise = DefaultNoise(ActorKind::kPerson);
  noise.accel_sigma = 0.0;
  ActorFilter filter(ActorKind::kPerson, Obs(0.0, Eigen::Vector3d(1, 2, 0)),
                     noise);
  for (int k = 1; k <= 4; ++k) {
    filter.Update(Obs(0.0, Eigen::Vector3d(1.0 + 0.3 * k, 2.0 - 0.1 * k, 0.0)));
  }
  ActorFilter stepped = filter;
  ActorFilter single = filter;
  for (int k = 0; k < 7; ++k) stepped.Predict(0.2);
  single.Predict(1.4);
  EXPECT_LT((stepped.state() - single.state()).norm(), 1e-12);
  EXPECT_LT((stepped.covariance() - single.covariance()).norm(), 1e-9);
}

TEST(ActorFilterTest, NonFiniteObservationIsPredictOnly) {
  ActorFilter filter(ActorKind::kPerson, Obs(0.0, Eigen::Vector3d::Zero()),
                     DefaultNoise(ActorKind::kPerson));
  ActorFilter predicted = filter;
  predicted.Predict(0.2);
  const ActorFilter stepped = kf_step(
      filter, 0.2,
      Obs(0.2, Eigen::Vector3d(std::nan(""), 0.0, 0.0)));
  EXPECT_EQ(stepped.state(), predicted.state());
  EXPECT_EQ(stepped.covariance(), predicted.covariance());
  EXPECT_THROW(filter.Predict(0.0), std::invalid_argument);
  EXPECT_THROW(filter.Predict(-1.0), std::invalid_argument);
}

double MinEigenvalue(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues().minCoeff();
}

TEST(ActorFilterTest, CovarianceStaysPositiveDefinite) {
  for (const ActorKind kind : {ActorKind::kPerson, ActorKind::kVehicle}) {
    std::mt19937_64 rng(kind == ActorKind::kPerson ? 1 : 2);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ActorFilter filter(kind, Obs(0.0, Eigen::Vector3d::Zero()),
                       DefaultNoise(kind));
    Eigen::Vector3d truth = Eigen::Vector3d::Zero();
    for (int k = 0; k < 10000; ++k) {
      const double dt = 0.01 + 0.5 * unit(rng);
      truth += Eigen::Vector3d(gauss(rng), gauss(rng), 0.0);
      std::optional<ActorObservation> obs;
      if (unit(rng) < 0.7) {
        obs = Obs(0.0, truth + 0.5 * Eigen::Vector3d(gauss(rng), gauss(rng), 0.0),
                  NormalizeAngle(4.0 * gauss(rng)));
      }
      filter = kf_step(filter, dt, obs);
      const Eigen::MatrixXd& p = filter.covariance();
      ASSERT_EQ(p, p.transpose()) << "cycle " << k;
      ASSERT_GT(MinEigenvalue(p), 0.0) << "cycle " << k;
    }
  }
}

TEST(ForecastTest, ZeroVelocityIsConstant) {
  const Eigen::Vector3d p(3.0, 4.0, 1.0);
  const ActorFilter filter(ActorKind::kPerson, Obs(2.0, p, 0.4),
                           DefaultNoise(ActorKind::kPerson));
  const ActorForecast f = forecast(filter, 10.0, 0.2);
  ASSERT_EQ(f.size(), 51);
  for (int k = 0; k < f.size(); ++k) {
    EXPECT_EQ(f.positions.row(k).transpose(), p);
    EXPECT_DOUBLE_EQ(f.headings[k], 0.4);
    EXPECT_NEAR(f.times[k], 2.0 + 0.2 * k, 1e-12);
    if (k > 0) {
      EXPECT_GT(f.times[k], f.times[k - 1]);
    }
  }
}

TEST(ForecastTest, ConstantVelocityIsLinear) {
  FilterNoise noise = DefaultNoise(ActorKind::kPerson);
  noise.measurement_sigma = 1e-3;
  ActorFilter filter(ActorKind::kPerson, Obs(0.0, Eigen::Vector3d::Zero()),
                     noise);
  for (int k = 1; k <= 10; ++k) {
    filter = kf_step(filter, 0.5, Obs(0.0, Eigen::Vector3d(-k * 0.5, k * 0.5, 0)));
  }
  const ActorForecast f = forecast(filter, 4.0, 0.25);
  const Eigen::Vector3d p = filter.position();
  const Eigen::Vector3d v = filter.velocity();
  EXPECT_EQ(f.positions.row(0).transpose(), p);
  for (int k = 0; k < f.size(); ++k) {
    EXPECT_EQ(f.positions.row(k).transpose(), p + v * (k * 0.25));
    EXPECT_NEAR(f.headings[k], std::atan2(v.y(), v.x()), 1e-12);
  }
  EXPECT_NEAR(f.headings[0], 3.0 * kPi / 4.0, 1e-3);
}

TEST(ForecastTest, VehicleTurnFollowsArc) {
  FilterNoise noise = DefaultNoise(ActorKind::kVehicle);
  ActorFilter filter(ActorKind::kVehicle, Obs(0.0, Eigen::Vector3d(1, 2, 0), 0.3),
                     noise);
  // Drive the filter along a circle so that it picks up speed and turn rate.
  const double radius = 12.0;
  const double speed = 6.0;
  const double omega = speed / radius;
  const Eigen::Vector2d center(1.0 - radius * std::cos(0.3 - kPi / 2.0),
                               2.0 - radius * std::sin(0.3 - kPi / 2.0));
  for (int k = 1; k <= 60; ++k) {
    const double t = 0.1 * k;
    const double a = 0.3 - kPi / 2.0 + omega * t;
    filter = kf_step(filter, 0.1,
                     Obs(t, Eigen::Vector3d(center.x() + radius * std::cos(a),
                                            center.y() + radius * std::sin(a), 0),
                         0.3 + omega * t));
  }
  const double v = filter.state()[3];
  const double psi = filter.state()[4];
  const double w = filter.turn_rate();
  ASSERT_GT(std::abs(w), 0.1);
  const Eigen::Vector3d p0 = filter.position();
  const double r = v / w;
  const Eigen::Vector2d c(p0.x() - r * std::sin(psi), p0.y() + r * std::cos(psi));
  const ActorForecast f = forecast(filter, 5.0, 0.2);
  for (int k = 0; k < f.size(); ++k) {
    const double tau = 0.2 * k;
    const Eigen::Vector2d q = f.positions.row(k).head<2>().transpose();
    EXPECT_NEAR((q - c).norm(), std::abs(v / w), 1e-9);
    EXPECT_NEAR(q.x(), c.x() + r * std::sin(psi + w * tau), 1e-9);
    EXPECT_NEAR(q.y(), c.y() - r * std::cos(psi + w * tau), 1e-9);
    EXPECT_NEAR(std::cos(f.headings[k]), std::cos(psi + w * tau), 1e-9);
    EXPECT_NEAR(std::sin(f.headings[k]), std::sin(psi + w * tau), 1e-9);
  }
  EXPECT_NEAR(std::abs(r), radius, 0.5);
}

TEST(ForecastTest, SampleCountAndArguments) {
  EXPECT_EQ(ForecastSampleCount(10.0, 0.2), 51);
  EXPECT_EQ(ForecastSampleCount(0.6, 0.2), 4);
  const ActorFilter filter(ActorKind::kPerson, Obs(0.0, Eigen::Vector3d::Zero()),
                           DefaultNoise(ActorKind::kPerson));
  EXPECT_THROW(forecast(filter, 0.0, 0.2), std::invalid_argument);
  EXPECT_THROW(forecast(filter, 1.0, -0.2), std::invalid_argument);
}

TEST(ObservationIoTest, RoundTrip) {
  const std::vector<ActorObservation> obs = {
      Obs(0.0, Eigen::Vector3d(1.25, -3.5, 0.0), 0.5),
      Obs(0.2, Eigen::Vector3d(1.0 / 3.0, 2.0, 1.0), -3.0)};
  std::stringstream stream;
  WriteObservations(stream, obs);
  stream << "\n";
  const auto back = ReadObservations(stream);
  ASSERT_EQ(back.size(), 2u);
  for (size_t i = 0; i < obs.size(); ++i) {
    EXPECT_EQ(back[i].timestamp, obs[i].timestamp);
    EXPECT_EQ(back[i].position, obs[i].position);
    EXPECT_EQ(back[i].heading, obs[i].heading);
  }
}

TEST(ObservationIoTest, MalformedLineNamesLine) {
  std::stringstream stream("{\"t\":0,\"x\":0,\"y\":0,\"z\":0,\"psi\":0}\n{\"t\":1}\n");
  try {
    ReadObservations(stream);
    FAIL() << "expected an error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(ActorKindTest, Parsing) {
  EXPECT_EQ(ActorKindFromString("vehicle"), ActorKind::kVehicle);
  EXPECT_EQ(ToString(ActorKind::kPerson), "person");
  EXPECT_THROW(ActorKindFromString("bicycle"), std::invalid_argument);
}

}  // namespace
}  // namespace forecast
}  // namespace aerocine
