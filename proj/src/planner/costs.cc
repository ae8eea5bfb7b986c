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

#include "aerocine/planner/costs.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace aerocine {
namespace planner {
namespace {

void RequireSameSize(int a, int b, const char* what) {
  if (a != b) throw std::invalid_argument(what);
}

Eigen::Vector3d Row(const Eigen::MatrixX3d& m, int i) {
  return m.row(i).transpose();
}

}  // namespace

double QuadraticForm::Evaluate(const Eigen::MatrixX3d& free) const {
  return 0.5 * (free.transpose() * a * free).trace() +
         (free.transpose() * b).trace() + c;
}

Eigen::MatrixX3d QuadraticForm::Gradient(const Eigen::MatrixX3d& free) const {
  return a * free + b;
}

Eigen::MatrixXd DifferenceOperator(int n, int order, double dt) {
  if (order < 0 || n <= order) {
    throw std::invalid_argument("difference order needs more waypoints");
  }
  Eigen::MatrixXd d = Eigen::MatrixXd::Identity(n, n);
  for (int k = 0; k < order; ++k) {
    const int rows = static_cast<int>(d.rows());
    Eigen::MatrixXd next(rows - 1, n);
    for (int r = 0; r + 1 < rows; ++r) next.row(r) = d.row(r + 1) - d.row(r);
    d = next / dt;
  }
  return d;
}

Eigen::MatrixXd SmoothnessMatrix(int n, double dt,
                                 const std::vector<double>& alpha) {
  const int d_max = static_cast<int>(alpha.size());
  if (n < d_max + 1) {
    throw std::invalid_argument(
        "trajectory too short for the highest smoothness order");
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int order = 1; order <= d_max; ++order) {
    if (alpha[order - 1] == 0.0) continue;
    const Eigen::MatrixXd d = DifferenceOperator(n, order, dt);
    a += alpha[order - 1] * d.transpose() * d;
  }
  return a;
}

QuadraticForm smoothness_form(const Trajectory& traj,
                              const PlannerConfig& config) {
  const int n = traj.size();
  const Eigen::MatrixXd full = SmoothnessMatrix(n, traj.dt(), config.alpha);
  const double scale = 1.0 / (n - 1);
  const Eigen::RowVector3d start = traj.positions.row(0);
  QuadraticForm form;
  form.a = scale * full.bottomRightCorner(n - 1, n - 1);
  form.b = scale * full.col(0).tail(n - 1) * start;
  form.c = 0.5 * scale * full(0, 0) * start.squaredNorm();
  return form;
}

QuadraticForm shot_quality_form(const Trajectory& shot_traj) {
  const int n = shot_traj.size();
  const double scale = 1.0 / (n - 1);
  const Eigen::MatrixX3d free = shot_traj.positions.bottomRows(n - 1);
  QuadraticForm form;
  form.a = scale * Eigen::MatrixXd::Identity(n - 1, n - 1);
  form.b = -scale * free;
  // The start row is fixed; its residual is added by shot_quality_cost.
  form.c = 0.5 * scale * free.squaredNorm();
  return form;
}

CostResult smoothness_cost(const Trajectory& traj,
                           const PlannerConfig& config) {
  const int n = traj.size();
  const Eigen::MatrixXd a = SmoothnessMatrix(n, traj.dt(), config.alpha);
  const Eigen::MatrixX3d ap = a * traj.positions;
  CostResult result;
  result.cost = (traj.positions.transpose() * ap).trace() / (2.0 * (n - 1));
  result.gradient = ap / (n - 1);
  result.gradient.row(0).setZero();
  return result;
}

CostResult shot_quality_cost(const Trajectory& traj,
                             const Trajectory& shot_traj) {
  RequireSameSize(traj.size(), shot_traj.size(),
                  "shot trajectory size differs from trajectory size");
  const int n = traj.size();
  if (n < 2) throw std::invalid_argument("trajectory needs two waypoints");
  const Eigen::MatrixX3d diff = traj.positions - shot_traj.positions;
  CostResult result;
  result.cost = diff.squaredNorm() / (2.0 * (n - 1));
  result.gradient = diff / (n - 1);
  result.gradient.row(0).setZero();
  return result;
}

double obstacle_potential(double d, double epsilon_obs) {
  if (std::isnan(d)) return d;
  if (d < 0.0) return -d + 0.5 * epsilon_obs;
  if (d <= epsilon_obs) {
    const double e = d - epsilon_obs;
    return e * e / (2.0 * epsilon_obs);
  }
  return 0.0;
}

double obstacle_potential_derivative(double d, double epsilon_obs) {
  if (std::isnan(d)) return d;
  if (d < 0.0) return -1.0;
  if (d <= epsilon_obs) return (d - epsilon_obs) / epsilon_obs;
  return 0.0;
}

CostResult safety_cost(const Trajectory& traj,
                       const itsdt::FieldSnapshot& field,
                       const PlannerConfig& config) {
  const int n = traj.size();
  const double eps = config.epsilon_obs;
  CostResult result;
  result.gradient = Eigen::MatrixX3d::Zero(n, 3);
  for (int i = 0; i + 1 < n; ++i) {
    const Eigen::Vector3d q = Row(traj.positions, i);
    const Eigen::Vector3d seg = Row(traj.positions, i + 1) - q;
    const double length = seg.norm();
    if (length == 0.0) continue;
    const itsdt::FieldSample s = field.sample(q);
    const double c = obstacle_potential(s.value, eps);
    if (c == 0.0) continue;
    const double dc = obstacle_potential_derivative(s.value, eps);
    const Eigen::Vector3d u = seg / length;
    result.cost += c * length;
    result.gradient.row(i) += (dc * length * s.gradient - c * u).transpose();
    result.gradient.row(i + 1) += (c * u).transpose();
  }
  result.gradient.row(0).setZero();
  return result;
}

CostResult occlusion_cost(const Trajectory& traj,
                          const forecast::ActorForecast& actor,
                          const itsdt::FieldSnapshot& field,
                          const PlannerConfig& config) {
  const int n = traj.size();
  RequireSameSize(n, actor.size(),
                  "actor forecast size differs from trajectory size");
  const int k_samples = config.occlusion_samples;
  const double eps = config.epsilon_obs;
  const double h = 1.0 / (k_samples - 1);
  CostResult result;
  result.gradient = Eigen::MatrixX3d::Zero(n, 3);
  for (int i = 0; i + 1 < n; ++i) {
    const Eigen::Vector3d q = Row(traj.positions, i);
    const Eigen::Vector3d a = Row(actor.positions, i);
    const Eigen::Vector3d seg = Row(traj.positions, i + 1) - q;
    const double arc = seg.norm();
    const Eigen::Vector3d view = q - a;
    const double reach = view.norm();
    if (arc == 0.0 || reach == 0.0) continue;
    double inner = 0.0;
    Eigen::Vector3d inner_grad = Eigen::Vector3d::Zero();
    for (int k = 0; k < k_samples; ++k) {
      const double tau = k * h;
      const double w = (k == 0 || k == k_samples - 1) ? 0.5 * h : h;
      const itsdt::FieldSample s = field.sample(a + tau * view);
      const double c = obstacle_potential(s.value, eps);
      if (c == 0.0) continue;
      inner += w * c;
      inner_grad +=
          w * tau * obstacle_potential_derivative(s.value, eps) * s.gradient;
    }
    if (inner == 0.0) continue;
    const Eigen::Vector3d u = seg / arc;
    result.cost += arc * reach * inner;
    result.gradient.row(i) +=
        (arc * (view / reach * inner + reach * inner_grad) -
         reach * inner * u)
            .transpose();
    result.gradient.row(i + 1) += (reach * inner * u).transpose();
  }
  result.gradient.row(0).setZero();
  return result;
}

Objective::Objective(const forecast::ActorForecast& actor,
                     const ShotSpec& shot, const itsdt::FieldSnapshot& field,
                     const PlannerConfig& config)
    : actor_(actor),
      field_(field),
      config_(config),
      shot_traj_(ideal_shot_trajectory(actor, shot)) {
  const int n = actor.size();
  smooth_ = SmoothnessMatrix(n, shot_traj_.dt(), config.alpha);
}

TotalCost Objective::Evaluate(const Trajectory& traj) const {
  const int n = traj.size();
  RequireSameSize(n, size(), "trajectory size differs from the objective");
  TotalCost total;
  const Eigen::MatrixX3d ap = smooth_ * traj.positions;
  total.smooth = (traj.positions.transpose() * ap).trace() / (2.0 * (n - 1));
  total.gradient = ap / (n - 1);
  if (config_.lambda1 != 0.0) {
    const CostResult shot = shot_quality_cost(traj, shot_traj_);
    total.shot = shot.cost;
    total.gradient += config_.lambda1 * shot.gradient;
  }
  if (config_.lambda2 != 0.0) {
    const CostResult obs = safety_cost(traj, field_, config_);
    total.obs = obs.cost;
    total.gradient += config_.lambda2 * obs.gradient;
  }
  if (config_.lambda3 != 0.0) {
    const CostResult occ = occlusion_cost(traj, actor_, field_, config_);
    total.occ = occ.cost;
    total.gradient += config_.lambda3 * occ.gradient;
  }
  total.gradient.row(0).setZero();
  total.cost = total.smooth + config_.lambda1 * total.shot +
               config_.lambda2 * total.obs + config_.lambda3 * total.occ;
  return total;
}

Eigen::MatrixXd Objective::Preconditioner() const {
  const int n = size();
  Eigen::MatrixXd m = smooth_.bottomRightCorner(n - 1, n - 1);
  m.diagonal().array() += config_.lambda1;
  return m / (n - 1);
}

TotalCost total_cost(const Trajectory& traj,
                     const forecast::ActorForecast& actor,
                     const ShotSpec& shot, const itsdt::FieldSnapshot& field,
                     const PlannerConfig& config) {
  return Objective(actor, shot, field, config).Evaluate(traj);
}

double MinSignedDistance(const Trajectory& traj,
                         const itsdt::FieldSnapshot& field,
                         int samples_per_segment) {
  double best = std::numeric_limits<double>::infinity();
  const int n = traj.size();
  const int sub = std::max(samples_per_segment, 1);
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector3d q = Row(traj.positions, i);
    best = std::min(best, field.sample(q).value);
    if (i + 1 == n) break;
    const Eigen::Vector3d next = Row(traj.positions, i + 1);
    for (int k = 1; k < sub; ++k) {
      const double s = static_cast<double>(k) / sub;
      best = std::min(best, field.sample((1.0 - s) * q + s * next).value);
    }
  }
  return best;
}

}  // namespace planner
}  // namespace aerocine
