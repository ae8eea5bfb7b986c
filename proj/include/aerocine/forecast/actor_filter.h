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

#ifndef AEROCINE_FORECAST_ACTOR_FILTER_H_
#define AEROCINE_FORECAST_ACTOR_FILTER_H_

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "Eigen/Core"

namespace aerocine {
namespace forecast {

enum class ActorKind { kPerson, kVehicle };

std::string ToString(ActorKind kind);
// Accepts "person" or "vehicle"; throws std::invalid_argument otherwise.
ActorKind ActorKindFromString(const std::string& name);

// Wraps an angle into [-pi, pi).
double NormalizeAngle(double angle);

struct ActorObservation {
  double timestamp = 0.0;
  // World position on the ground plane.
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  double heading = 0.0;

  bool IsFinite() const {
    return std::isfinite(timestamp) && position.allFinite() &&
           std::isfinite(heading);
  }
};

struct FilterNoise {
  double accel_sigma = 1.0;        // m/s^2
  double turn_accel_sigma = 0.3;   // rad/s^2, vehicle only
  double measurement_sigma = 0.5;  // m
  double heading_sigma = 0.1;      // rad, vehicle only
  double initial_speed_sigma = 10.0;
  double initial_turn_rate_sigma = 1.0;
};

FilterNoise DefaultNoise(ActorKind kind);

// Kalman filter over actor motion.
//
// Person: constant velocity in the ground plane, state (x, y, z, vx, vy),
// position measurements; heading is derived from the velocity.
// Vehicle: constant turn rate and velocity, state (x, y, z, v, psi, omega),
// position and heading measurements, extended-KF linearization.
class ActorFilter {
 public:
  ActorFilter(ActorKind kind, const ActorObservation& first,
              const FilterNoise& noise);

  ActorKind kind() const { return kind_; }
  const FilterNoise& noise() const { return noise_; }
  double time() const { return time_; }
  const Eigen::VectorXd& state() const { return state_; }
  const Eigen::MatrixXd& covariance() const { return covariance_; }

  Eigen::Vector3d position() const { return state_.head<3>(); }
  Eigen::Vector3d velocity() const;
  // Direction of motion; the last observed heading when the actor is nearly
  // stationary (person model).
  double heading() const;
  double turn_rate() const;

  // Throws std::invalid_argument unless dt > 0.
  void Predict(double dt);
  // Returns false and leaves the filter untouched for non-finite input.
  bool Update(const ActorObservation& observation);

 private:
  void Symmetrize();

  ActorKind kind_;
  FilterNoise noise_;
  double time_ = 0.0;
  double last_heading_ = 0.0;
  Eigen::VectorXd state_;
  Eigen::MatrixXd covariance_;
};

// One predict step over dt followed by a measurement update when an
// observation is present and finite.
ActorFilter kf_step(ActorFilter filter, double dt,
                    const std::optional<ActorObservation>& observation);

// Time-stamped actor samples (x, y, z, psi).
struct ActorForecast {
  std::vector<double> times;
  Eigen::MatrixX3d positions;
  Eigen::VectorXd headings;

  int size() const { return static_cast<int>(times.size()); }
};

// Rolls the motion model forward from the current estimate without
// measurements. Samples are spaced dt apart and cover [0, horizon]; sample 0
// is the current estimate.
ActorForecast forecast(const ActorFilter& filter, double horizon, double dt);

// Number of samples covering [0, horizon] at spacing dt.
int ForecastSampleCount(double horizon, double dt);

}  // namespace forecast
}  // namespace aerocine

#endif  // AEROCINE_FORECAST_ACTOR_FILTER_H_
