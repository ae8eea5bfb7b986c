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

#include "aerocine/forecast/actor_filter.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "Eigen/Cholesky"

namespace aerocine {
namespace forecast {
namespace {

constexpr double kStationarySpeed = 0.1;  // m/s
constexpr double kStraightTurnRate = 1e-6;

// Indices into the vehicle state.
constexpr int kSpeed = 3;
constexpr int kYaw = 4;
constexpr int kYawRate = 5;

struct CtrvMotion {
  Eigen::Vector3d position;
  double yaw;
};

// Closed-form constant turn rate and velocity motion over tau seconds.
CtrvMotion MoveCtrv(const Eigen::Vector3d& position, double speed, double yaw,
                    double yaw_rate, double tau) {
  CtrvMotion out{position, yaw + yaw_rate * tau};
  if (std::abs(yaw_rate) > kStraightTurnRate) {
    const double r = speed / yaw_rate;
    out.position.x() += r * (std::sin(out.yaw) - std::sin(yaw));
    out.position.y() += r * (std::cos(yaw) - std::cos(out.yaw));
  } else {
    out.position.x() += speed * std::cos(yaw) * tau;
    out.position.y() += speed * std::sin(yaw) * tau;
  }
  return out;
}

}  // namespace

std::string ToString(ActorKind kind) {
  return kind == ActorKind::kPerson ? "person" : "vehicle";
}

ActorKind ActorKindFromString(const std::string& name) {
  if (name == "person") return ActorKind::kPerson;
  if (name == "vehicle") return ActorKind::kVehicle;
  throw std::invalid_argument("unknown actor kind '" + name + "'");
}

double NormalizeAngle(double angle) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(angle + std::numbers::pi, kTwoPi);
  if (wrapped < 0.0) wrapped += kTwoPi;
  wrapped -= std::numbers::pi;
  // fmod can round up to exactly pi.
  if (wrapped >= std::numbers::pi) wrapped -= kTwoPi;
  return wrapped;
}

FilterNoise DefaultNoise(ActorKind kind) {
  FilterNoise noise;
  noise.accel_sigma = kind == ActorKind::kPerson ? 1.0 : 0.5;
  return noise;
}

ActorFilter::ActorFilter(ActorKind kind, const ActorObservation& first,
                         const FilterNoise& noise)
    : kind_(kind), noise_(noise), time_(first.timestamp) {
  if (!first.IsFinite()) {
    throw std::invalid_argument("initial observation must be finite");
  }
  last_heading_ = NormalizeAngle(first.heading);
  const double pos_var = noise.measurement_sigma * noise.measurement_sigma;
  const double speed_var =
      noise.initial_speed_sigma * noise.initial_speed_sigma;
  if (kind_ == ActorKind::kPerson) {
    state_ = Eigen::VectorXd::Zero(5);
    state_.head<3>() = first.position;
    covariance_ = Eigen::VectorXd(
                      (Eigen::VectorXd(5) << pos_var, pos_var, pos_var,
                       speed_var, speed_var)
                          .finished())
                      .asDiagonal();
  } else {
    state_ = Eigen::VectorXd::Zero(6);
    state_.head<3>() = first.position;
    state_[kYaw] = last_heading_;
    const double yaw_var = noise.heading_sigma * noise.heading_sigma;
    const double rate_var =
        noise.initial_turn_rate_sigma * noise.initial_turn_rate_sigma;
    covariance_ = Eigen::VectorXd((Eigen::VectorXd(6) << pos_var, pos_var,
                                   pos_var, speed_var, yaw_var, rate_var)
                                      .finished())
                      .asDiagonal();
  }
}

Eigen::Vector3d ActorFilter::velocity() const {
  if (kind_ == ActorKind::kPerson) {
    return Eigen::Vector3d(state_[3], state_[4], 0.0);
  }
  return Eigen::Vector3d(state_[kSpeed] * std::cos(state_[kYaw]),
                         state_[kSpeed] * std::sin(state_[kYaw]), 0.0);
}

double ActorFilter::heading() const {
  if (kind_ == ActorKind::kVehicle) return NormalizeAngle(state_[kYaw]);
  const Eigen::Vector3d v = velocity();
  if (v.head<2>().norm() < kStationarySpeed) return last_heading_;
  return std::atan2(v.y(), v.x());
}

double ActorFilter::turn_rate() const {
  return kind_ == ActorKind::kVehicle ? state_[kYawRate] : 0.0;
}

void ActorFilter::Predict(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("dt must be positive");
  }
  const double a2 = noise_.accel_sigma * noise_.accel_sigma;
  const double dt2 = dt * dt;
  const double dt3 = dt2 * dt;
  const double dt4 = dt2 * dt2;

  if (kind_ == ActorKind::kPerson) {
    Eigen::MatrixXd f = Eigen::MatrixXd::Identity(5, 5);
    f(0, 3) = dt;
    f(1, 4) = dt;
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(5, 5);
    for (int axis = 0; axis < 2; ++axis) {
      q(axis, axis) = a2 * dt4 / 4.0;
      q(axis, axis + 3) = q(axis + 3, axis) = a2 * dt3 / 2.0;
      q(axis + 3, axis + 3) = a2 * dt2;
    }
    q(2, 2) = a2 * dt4 / 4.0;
    state_ = f * state_;
    covariance_ = f * covariance_ * f.transpose() + q;
  } else {
    const double v = state_[kSpeed];
    const double yaw = state_[kYaw];
    const double w = state_[kYawRate];
    const CtrvMotion moved = MoveCtrv(state_.head<3>(), v, yaw, w, dt);

    Eigen::MatrixXd f = Eigen::MatrixXd::Identity(6, 6);
    const double yaw_end = yaw + w * dt;
    if (std::abs(w) > kStraightTurnRate) {
      const double ds = std::sin(yaw_end) - std::sin(yaw);
      const double dc = std::cos(yaw) - std::cos(yaw_end);
      f(0, kSpeed) = ds / w;
      f(0, kYaw) = v / w * (std::cos(yaw_end) - std::cos(yaw));
      f(0, kYawRate) = -v / (w * w) * ds + v / w * dt * std::cos(yaw_end);
      f(1, kSpeed) = dc / w;
      f(1, kYaw) = v / w * (std::sin(yaw_end) - std::sin(yaw));
      f(1, kYawRate) = -v / (w * w) * dc + v / w * dt * std::sin(yaw_end);
    } else {
      f(0, kSpeed) = std::cos(yaw) * dt;
      f(0, kYaw) = -v * std::sin(yaw) * dt;
      f(0, kYawRate) = -0.5 * v * dt2 * std::sin(yaw);
      f(1, kSpeed) = std::sin(yaw) * dt;
      f(1, kYaw) = v * std::cos(yaw) * dt;
      f(1, kYawRate) = 0.5 * v * dt2 * std::cos(yaw);
    }
    f(kYaw, kYawRate) = dt;

    Eigen::Matrix<double, 6, 2> g = Eigen::Matrix<double, 6, 2>::Zero();
    g(0, 0) = 0.5 * dt2 * std::cos(yaw);
    g(1, 0) = 0.5 * dt2 * std::sin(yaw);
    g(kSpeed, 0) = dt;
    g(kYaw, 1) = 0.5 * dt2;
    g(kYawRate, 1) = dt;
    const Eigen::Vector2d sigmas(
        a2, noise_.turn_accel_sigma * noise_.turn_accel_sigma);
    Eigen::MatrixXd q = g * sigmas.asDiagonal() * g.transpose();
    q(2, 2) += a2 * dt4 / 4.0;

    state_.head<3>() = moved.position;
    state_[kYaw] = NormalizeAngle(moved.yaw);
    covariance_ = f * covariance_ * f.transpose() + q;
  }
  Symmetrize();
  time_ += dt;
}

bool ActorFilter::Update(const ActorObservation& observation) {
  if (!observation.IsFinite()) return false;
  last_heading_ = NormalizeAngle(observation.heading);

  const int n = static_cast<int>(state_.size());
  const int m = kind_ == ActorKind::kPerson ? 3 : 4;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, n);
  h.block<3, 3>(0, 0).setIdentity();
  Eigen::VectorXd innovation(m);
  innovation.head<3>() = observation.position - state_.head<3>();
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(m, m) *
                      (noise_.measurement_sigma * noise_.measurement_sigma);
  if (kind_ == ActorKind::kVehicle) {
    h(3, kYaw) = 1.0;
    innovation[3] = NormalizeAngle(observation.heading - state_[kYaw]);
    r(3, 3) = noise_.heading_sigma * noise_.heading_sigma;
  }

  const Eigen::MatrixXd s = h * covariance_ * h.transpose() + r;
  const Eigen::MatrixXd gain =
      s.ldlt().solve(h * covariance_).transpose();  // P H^T S^-1
  state_ += gain * innovation;
  if (kind_ == ActorKind::kVehicle) state_[kYaw] = NormalizeAngle(state_[kYaw]);

  // Joseph form keeps the covariance positive definite.
  const Eigen::MatrixXd i_kh = Eigen::MatrixXd::Identity(n, n) - gain * h;
  covariance_ =
      i_kh * covariance_ * i_kh.transpose() + gain * r * gain.transpose();
  Symmetrize();
  return true;
}

void ActorFilter::Symmetrize() {
  covariance_ = 0.5 * (covariance_ + covariance_.transpose()).eval();
}

ActorFilter kf_step(ActorFilter filter, double dt,
                    const std::optional<ActorObservation>& observation) {
  filter.Predict(dt);
  if (observation.has_value()) filter.Update(*observation);
  return filter;
}

int ForecastSampleCount(double horizon, double dt) {
  return static_cast<int>(std::llround(horizon / dt)) + 1;
}

ActorForecast forecast(const ActorFilter& filter, double horizon, double dt) {
  if (!(horizon > 0.0) || !(dt > 0.0)) {
    throw std::invalid_argument("horizon and dt must be positive");
  }
  const int count = ForecastSampleCount(horizon, dt);
  ActorForecast out;
  out.times.resize(count);
  out.positions.resize(count, 3);
  out.headings.resize(count);

  const Eigen::Vector3d p0 = filter.position();
  const Eigen::VectorXd& state = filter.state();
  for (int k = 0; k < count; ++k) {
    const double tau = k * dt;
    out.times[k] = filter.time() + tau;
    if (filter.kind() == ActorKind::kPerson) {
      const Eigen::Vector3d v = filter.velocity();
      out.positions.row(k) = (p0 + v * tau).transpose();
      out.headings[k] = filter.heading();
    } else {
      const CtrvMotion moved = MoveCtrv(p0, state[kSpeed], state[kYaw],
                                        state[kYawRate], tau);
      out.positions.row(k) = moved.position.transpose();
      out.headings[k] = NormalizeAngle(moved.yaw);
    }
  }
  return out;
}

}  // namespace forecast
}  // namespace aerocine
