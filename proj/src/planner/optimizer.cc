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

#include "aerocine/planner/optimizer.h"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "Eigen/Cholesky"

namespace aerocine {
namespace planner {
namespace {

bool IsFinite(const TotalCost& c) {
  return std::isfinite(c.cost) && c.gradient.allFinite();
}

void Record(const TotalCost& c, PlanDiagnostics* d) {
  d->cost = c.cost;
  d->smooth = c.smooth;
  d->shot = c.shot;
  d->obs = c.obs;
  d->occ = c.occ;
}

}  // namespace

PlanResult plan(const Trajectory& initial,
                const forecast::ActorForecast& actor, const ShotSpec& shot,
                const itsdt::FieldSnapshot& field,
                const PlannerConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  config.Validate();
  shot.Validate();
  const int n = initial.size();
  if (n < config.d_max() + 1) {
    throw std::invalid_argument(
        "trajectory too short for the highest smoothness order");
  }
  if (actor.size() != n) {
    throw std::invalid_argument("actor forecast size differs from trajectory");
  }

  const Objective objective(actor, shot, field, config);
  const Eigen::LLT<Eigen::MatrixXd> preconditioner(objective.Preconditioner());
  if (preconditioner.info() != Eigen::Success) {
    throw std::invalid_argument("preconditioner is not positive definite");
  }

  PlanResult result;
  result.trajectory = initial;
  PlanDiagnostics& diag = result.diagnostics;
  TotalCost current = objective.Evaluate(result.trajectory);
  if (!IsFinite(current)) {
    diag.error = true;
    diag.error_message = "non-finite cost at the initial trajectory";
  } else {
    Record(current, &diag);
    Eigen::MatrixX3d step;
    const auto precondition = [&](const TotalCost& c) {
      step = preconditioner.solve(c.gradient.bottomRows(n - 1));
      diag.precond_grad_norm = step.norm();
      diag.max_waypoint_step = step.rowwise().norm().maxCoeff();
    };
    precondition(current);
    while (true) {
      if (diag.max_waypoint_step < config.grad_tolerance) {
        diag.converged = true;
        break;
      }
      if (diag.iterations >= config.max_iterations) break;
      Trajectory next = result.trajectory;
      next.positions.bottomRows(n - 1) -= step / config.eta;
      const TotalCost evaluated = objective.Evaluate(next);
      if (!IsFinite(evaluated) || !next.positions.allFinite()) {
        diag.error = true;
        diag.error_message = "non-finite cost or gradient during descent";
        break;
      }
      result.trajectory = std::move(next);
      current = evaluated;
      ++diag.iterations;
      Record(current, &diag);
      precondition(current);
    }
  }
  UpdateHeadings(actor, &result.trajectory);
  diag.wall_ms = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - started)
                     .count();
  return result;
}

nlohmann::json DiagnosticsToJson(double t, const PlanDiagnostics& d) {
  return nlohmann::json{{"t", t},
                        {"iters", d.iterations},
                        {"J", d.cost},
                        {"J_smooth", d.smooth},
                        {"J_shot", d.shot},
                        {"J_obs", d.obs},
                        {"J_occ", d.occ},
                        {"wall_ms", d.wall_ms}};
}

}  // namespace planner
}  // namespace aerocine
