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

#ifndef AEROCINE_PLANNER_COSTS_H_
#define AEROCINE_PLANNER_COSTS_H_

#include <vector>

#include "Eigen/Core"
#include "aerocine/forecast/actor_filter.h"
#include "aerocine/itsdt/field_snapshot.h"
#include "aerocine/planner/planner_config.h"
#include "aerocine/planner/trajectory.h"

namespace aerocine {
namespace planner {

// J(X) = 1/2 Tr(X^T A X) + Tr(X^T b) + c over the free waypoints X (every
// waypoint but the fixed start), with the 1 / (n - 1) normalization folded
// into A, b and c.
struct QuadraticForm {
  Eigen::MatrixXd a;
  Eigen::MatrixX3d b;
  double c = 0.0;

  double Evaluate(const Eigen::MatrixX3d& free) const;
  Eigen::MatrixX3d Gradient(const Eigen::MatrixX3d& free) const;
};

struct CostResult {
  double cost = 0.0;
  // One row per waypoint; row 0 (the fixed start) is always zero.
  Eigen::MatrixX3d gradient;
};

struct TotalCost {
  double cost = 0.0;
  double smooth = 0.0;
  double shot = 0.0;
  double obs = 0.0;
  double occ = 0.0;
  Eigen::MatrixX3d gradient;
};

// Order-`order` forward difference operator on n samples, scaled by
// dt^-order. Shape (n - order) x n.
Eigen::MatrixXd DifferenceOperator(int n, int order, double dt);

// Sum over d of alpha[d-1] * D_d^T D_d, on all n waypoints.
Eigen::MatrixXd SmoothnessMatrix(int n, double dt,
                                 const std::vector<double>& alpha);

QuadraticForm smoothness_form(const Trajectory& traj,
                              const PlannerConfig& config);
QuadraticForm shot_quality_form(const Trajectory& shot_traj);

CostResult smoothness_cost(const Trajectory& traj, const PlannerConfig& config);
CostResult shot_quality_cost(const Trajectory& traj,
                             const Trajectory& shot_traj);

// Piecewise potential: -d + eps/2 below zero, (d - eps)^2 / (2 eps) on
// [0, eps], zero beyond.
double obstacle_potential(double d, double epsilon_obs);
double obstacle_potential_derivative(double d, double epsilon_obs);

// Sum over i < n-1 of c(d(q_i)) * |q_{i+1} - q_i|.
CostResult safety_cost(const Trajectory& traj,
                       const itsdt::FieldSnapshot& field,
                       const PlannerConfig& config);

// Sum over i < n-1 of |q_{i+1} - q_i| * |q_i - a_i| * sum_k w_k c(p_k) with
// p_k = tau_k q_i + (1 - tau_k) a_i on a trapezoid rule in tau.
CostResult occlusion_cost(const Trajectory& traj,
                          const forecast::ActorForecast& actor,
                          const itsdt::FieldSnapshot& field,
                          const PlannerConfig& config);

// Objective of one planning problem with its fixed parts precomputed. Keeps
// a reference to `field`, which must outlive it.
class Objective {
 public:
  Objective(const forecast::ActorForecast& actor, const ShotSpec& shot,
            const itsdt::FieldSnapshot& field, const PlannerConfig& config);

  int size() const { return actor_.size(); }
  const Trajectory& shot_trajectory() const { return shot_traj_; }
  const Eigen::MatrixXd& smoothness_matrix() const { return smooth_; }

  // J = J_smooth + l1 J_shot + l2 J_obs + l3 J_occ. Weights of zero skip the
  // component entirely.
  TotalCost Evaluate(const Trajectory& traj) const;

  // Hessian of J_smooth + l1 J_shot over the free waypoints.
  Eigen::MatrixXd Preconditioner() const;

 private:
  forecast::ActorForecast actor_;
  const itsdt::FieldSnapshot& field_;
  PlannerConfig config_;
  Trajectory shot_traj_;
  Eigen::MatrixXd smooth_;
};

TotalCost total_cost(const Trajectory& traj,
                     const forecast::ActorForecast& actor,
                     const ShotSpec& shot, const itsdt::FieldSnapshot& field,
                     const PlannerConfig& config);

// Smallest interpolated signed distance over the waypoints and
// `samples_per_segment` evenly spaced points on every segment.
double MinSignedDistance(const Trajectory& traj,
                         const itsdt::FieldSnapshot& field,
                         int samples_per_segment);

}  // namespace planner
}  // namespace aerocine

#endif  // AEROCINE_PLANNER_COSTS_H_
