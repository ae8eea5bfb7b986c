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

#include "aerocine/sim/actor_script.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace aerocine {
namespace sim {
namespace {

// splitmix64 finalizer; spreads consecutive seeds apart.
uint64_t MixSeed(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double PolylineHeading(const std::vector<Eigen::Vector3d>& points, size_t i) {
  // First segment at or after i with non-zero planar length.
  for (size_t k = i; k + 1 < points.size(); ++k) {
    const Eigen::Vector3d d = points[k + 1] - points[k];
    if (d.head<2>().norm() > 0.0) return std::atan2(d.y(), d.x());
  }
  for (size_t k = std::min(i, points.size() - 1); k > 0; --k) {
    const Eigen::Vector3d d = points[k] - points[k - 1];
    if (d.head<2>().norm() > 0.0) return std::atan2(d.y(), d.x());
  }
  return 0.0;
}

}  // namespace

void ScriptedActor::Validate() const {
  if (!(speed >= 0.0)) throw std::invalid_argument("actor speed must be >= 0");
  if (!(start_time >= 0.0)) {
    throw std::invalid_argument("actor start_time must be >= 0");
  }
  if (type == PathType::kPolyline) {
    if (points.empty()) throw std::invalid_argument("polyline has no points");
  } else {
    if (!(radius > 0.0)) throw std::invalid_argument("circle radius must be > 0");
    if (!(laps >= 0.0)) throw std::invalid_argument("circle laps must be >= 0");
  }
}

double ScriptedActor::Length() const {
  if (type == PathType::kCircle) {
    return 2.0 * std::numbers::pi * radius * laps;
  }
  double length = 0.0;
  for (size_t i = 0; i + 1 < points.size(); ++i) {
    length += (points[i + 1] - points[i]).norm();
  }
  return length;
}

double ScriptedActor::EndTime() const {
  if (speed == 0.0) return start_time;
  return start_time + Length() / speed;
}

forecast::ActorObservation actor_pose_at(const ScriptedActor& actor,
                                         double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("actor time must be >= 0");
  forecast::ActorObservation obs;
  obs.timestamp = t;
  const double s = std::clamp(actor.speed * (t - actor.start_time), 0.0,
                              actor.Length());
  if (actor.type == PathType::kCircle) {
    const double sign = actor.counterclockwise ? 1.0 : -1.0;
    const double angle = actor.start_angle + sign * s / actor.radius;
    obs.position = actor.center + actor.radius * Eigen::Vector3d(
                                                     std::cos(angle),
                                                     std::sin(angle), 0.0);
    obs.heading =
        forecast::NormalizeAngle(angle + sign * 0.5 * std::numbers::pi);
    return obs;
  }
  const std::vector<Eigen::Vector3d>& p = actor.points;
  double remaining = s;
  for (size_t i = 0; i + 1 < p.size(); ++i) {
    const Eigen::Vector3d d = p[i + 1] - p[i];
    const double length = d.norm();
    if (remaining <= length && length > 0.0) {
      const bool at_vertex = remaining == length && i + 2 < p.size();
      obs.position = p[i] + (remaining / length) * d;
      obs.heading = forecast::NormalizeAngle(
          at_vertex ? PolylineHeading(p, i + 1) : PolylineHeading(p, i));
      return obs;
    }
    remaining -= length;
  }
  obs.position = p.back();
  obs.heading = forecast::NormalizeAngle(PolylineHeading(p, p.size() - 1));
  return obs;
}

forecast::ActorObservation perturb_observation(
    const forecast::ActorObservation& obs, double amplitude, uint64_t seed) {
  if (!(amplitude >= 0.0)) {
    throw std::invalid_argument("perturbation amplitude must be >= 0");
  }
  if (amplitude == 0.0) return obs;
  std::mt19937_64 rng(MixSeed(seed));
  std::uniform_real_distribution<double> noise(-amplitude, amplitude);
  forecast::ActorObservation out = obs;
  out.position.x() += noise(rng);
  out.position.y() += noise(rng);
  return out;
}

}  // namespace sim
}  // namespace aerocine
