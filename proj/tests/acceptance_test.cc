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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "aerocine/planner/optimizer.h"
#include "aerocine/runner/commands.h"
#include "aerocine/runner/run_mode.h"
#include "aerocine/runner/scenario.h"
#include "planner_support.h"
#include "test_support.h"

namespace {

namespace fs = std::filesystem;
using namespace aerocine;  // NOLINT

const fs::path kScenarios = AEROCINE_SCENARIO_DIR;
const fs::path kOut = fs::temp_directory_path() / "aerocine_acceptance";

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since)
      .count();
}

std::string Format(const char* fmt, double a, double b = 0, double c = 0,
                   double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), fmt, a, b, c, d);
  return buf;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

runner::Scenario Load(const std::string& name) {
  return runner::LoadScenario(kScenarios / (name + ".json"));
}

runner::RunReport Run(const runner::Scenario& s, const std::string& mode,
                      const std::string& tag) {
  const fs::path dir = kOut / (s.name + "_" + tag);
  fs::remove_all(dir);
  return runner::run_scenario(s, runner::ParseRunMode(mode), runner::RunOptions{},
                              dir);
}

Outcome IncrementalEqualsBatch() {
  const auto start = std::chrono::steady_clock::now();
  int mismatches = 0;
  std::string first;
  for (uint64_t seed = 0; seed < 200; ++seed) {
    const std::string diff = testing::RunRandomSequence(seed, 32, 30, 500, 5);
    if (!diff.empty()) {
      ++mismatches;
      if (first.empty()) first = diff;
    }
  }
  const double elapsed = Seconds(start);
  Outcome out;
  out.pass = mismatches == 0 && elapsed < 60.0;
  out.detail = Format("200 sequences, %.0f mismatches, %.1f s", mismatches,
                      elapsed);
  if (!first.empty()) out.detail += "; " + first;
  return out;
}

Outcome GradientSuite() {
  std::mt19937_64 rng(2024);
  const planner::PlannerConfig config;
  double smooth = 0.0, shot = 0.0, safety = 0.0, occlusion = 0.0;
  for (int k = 0; k < 50; ++k) {
    const int n = 4 + k % 48;
    const planner::Trajectory traj = testing::RandomTrajectory(
        n, 1.0 + k % 10, Eigen::Vector3d(-5, -5, 0), Eigen::Vector3d(5, 5, 8),
        &rng);
    smooth = std::max(
        smooth, testing::RelativeError(
                    planner::smoothness_cost(traj, config).gradient,
                    testing::NumericGradient(
                        traj,
                        [&](const planner::Trajectory& t) {
                          return planner::smoothness_cost(t, config).cost;
                        },
                        1e-4)));
    const planner::Trajectory ideal = testing::RandomTrajectory(
        n, traj.horizon, Eigen::Vector3d(-5, -5, 0), Eigen::Vector3d(5, 5, 8),
        &rng);
    shot = std::max(
        shot, testing::RelativeError(
                  planner::shot_quality_cost(traj, ideal).gradient,
                  testing::NumericGradient(
                      traj,
                      [&](const planner::Trajectory& t) {
                        return planner::shot_quality_cost(t, ideal).cost;
                      },
                      1e-3)));
  }
  for (int k = 0; k < 50; ++k) {
    const itsdt::FieldSnapshot field = testing::RandomMap(&rng);
    const planner::Trajectory traj = testing::RandomTrajectory(
        21, 4.0, Eigen::Vector3d(1, 1, 1), Eigen::Vector3d(11, 11, 5), &rng);
    const planner::Trajectory walk = testing::RandomTrajectory(
        21, 4.0, Eigen::Vector3d(1, 1, 0.5), Eigen::Vector3d(11, 11, 1.5), &rng);
    forecast::ActorForecast actor = testing::LinearActor(
        21, 4.0, Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero());
    actor.positions = walk.positions;
    safety = std::max(
        safety, testing::RelativeError(
                    planner::safety_cost(traj, field, config).gradient,
                    testing::NumericGradient(
                        traj,
                        [&](const planner::Trajectory& t) {
                          return planner::safety_cost(t, field, config).cost;
                        },
                        1e-7)));
    occlusion = std::max(
        occlusion,
        testing::RelativeError(
            planner::occlusion_cost(traj, actor, field, config).gradient,
            testing::NumericGradient(
                traj,
                [&](const planner::Trajectory& t) {
                  return planner::occlusion_cost(t, actor, field, config).cost;
                },
                1e-7)));
  }
  Outcome out;
  out.pass = smooth < 1e-6 && shot < 1e-6 && safety < 1e-4 && occlusion < 1e-4;
  out.detail = Format(
      "max relative error smooth %.2e shot %.2e safety %.2e occlusion %.2e",
      smooth, shot, safety, occlusion);
  return out;
}

Outcome NewtonOneStep() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  int wrong_iterations = 0;
  for (int k = 0; k < 20; ++k) {
    testing::QuadraticProblem p;
    p.config = planner::PlannerConfig{};
    p.config.lambda2 = p.config.lambda3 = 0.0;
    p.config.eta = 1.0;
    p.actor = testing::LinearActor(
        51, 10.0, Eigen::Vector3d(50 * unit(rng), 50 * unit(rng), 1),
        Eigen::Vector3d(3 * unit(rng) - 1.5, 3 * unit(rng) - 1.5, 0));
    p.shot.rho = 2.0 + 10.0 * unit(rng);
    p.shot.phi_rel = 6.0 * unit(rng);
    p.shot.theta_rel = unit(rng);
    p.initial = planner::Trajectory::Constant(
        Eigen::Vector3d(50 * unit(rng), 50 * unit(rng), 5), 51, 10.0);
    const planner::PlanResult r =
        planner::plan(p.initial, p.actor, p.shot, p.field, p.config);
    worst = std::max(worst, r.diagnostics.precond_grad_norm);
    wrong_iterations += r.diagnostics.iterations != 1;
  }
  Outcome out;
  out.pass = worst < 1e-8 && wrong_iterations == 0;
  out.detail = Format(
      "20 problems, max preconditioned gradient norm %.2e after one step, "
      "%.0f needed more",
      worst, wrong_iterations);
  return out;
}

struct CorridorRuns {
  runner::RunReport online_gt;
  runner::RunReport gtmap_gt;
  runner::RunReport gtmap_noisy;
  double lambda1 = 0.0;
};

Outcome Ablation(const CorridorRuns& runs) {
  const auto& online = runs.online_gt.aggregates;
  const auto& gt = runs.gtmap_gt.aggregates;
  const auto& noisy = runs.gtmap_noisy.aggregates;
  const double ratio = online.avg_cost / gt.avg_cost;
  const double increase = noisy.avg_cost - gt.avg_cost;
  const double shot_increase = runs.lambda1 * (noisy.avg_shot - gt.avg_shot);
  Outcome out;
  out.pass = ratio >= 1.0 && ratio <= 1.3 && increase > 0.0 &&
             shot_increase > 0.5 * increase;
  out.detail = Format(
      "online/gt-map cost ratio %.4f; noisy minus gt actor cost %.4f, of "
      "which shot quality %.4f (%.0f%%)",
      ratio, increase, shot_increase,
      increase > 0 ? 100.0 * shot_increase / increase : 0.0);
  return out;
}

Outcome RealTime(const runner::RunReport& report) {
  const auto& t = report.timing;
  Outcome out;
  out.pass = report.aggregates.cycles == 700 && t.max_cycle_ms < 200.0;
  out.detail = Format("%.0f cycles, max cycle %.1f ms, mean %.1f ms, mean plan %.1f ms",
                      report.aggregates.cycles, t.max_cycle_ms, t.avg_cycle_ms,
                      t.avg_plan_ms);
  return out;
}

Outcome MapDecay() {
  const fs::path dir = kOut / "bench_map";
  fs::remove_all(dir);
  const runner::BenchMapSummary s = runner::bench_map(Load("corridor"), 5, dir);
  Outcome out;
  out.pass = s.median_late_update_ms < 0.5 * s.first_update_ms &&
             s.batch_mismatches == 0;
  out.detail = Format(
      "first update %.2f ms, median after 30 s %.3f ms; incremental %.0f ms vs "
      "batch %.0f ms after warmup",
      s.first_update_ms, s.median_late_update_ms,
      s.incremental_after_warmup_ms, s.batch_after_warmup_ms);
  out.detail += Format(", %.0f/%.0f batch checks matched",
                       s.batch_checks - s.batch_mismatches, s.batch_checks);
  return out;
}

Outcome Safety(const std::vector<std::pair<std::string, runner::RunReport>>& runs) {
  int violations = 0;
  int feasible = 0;
  int cycles = 0;
  std::string failing;
  for (const auto& [name, report] : runs) {
    violations += report.aggregates.safety_violations;
    feasible += report.aggregates.feasible_cycles;
    cycles += report.aggregates.cycles;
    if (report.aggregates.safety_violations > 0) failing += " " + name;
  }
  Outcome out;
  out.pass = violations == 0;
  out.detail = Format("%.0f runs, %.0f cycles, %.0f with feasible start, %.0f violations",
                      runs.size(), cycles, feasible, violations);
  if (!failing.empty()) out.detail += ";" + failing;
  return out;
}

Outcome Determinism() {
  const std::vector<std::string> files = {"cycles.csv", "trajectory.csv",
                                          "observations.jsonl",
                                          "map_updates.csv"};
  int compared = 0;
  int differing = 0;
  for (const auto& [name, mode] :
       std::vector<std::pair<std::string, std::string>>{
           {"corridor", "online,gt"}, {"orbit", "online,kf"},
           {"open_field", "online,noisy:1"}}) {
    const runner::Scenario s = Load(name);
    Run(s, mode, "det_a");
    Run(s, mode, "det_b");
    for (const auto& file : files) {
      const fs::path a = kOut / (s.name + "_det_a") / file;
      const fs::path b = kOut / (s.name + "_det_b") / file;
      ++compared;
      differing += !fs::exists(a) || ReadFile(a) != ReadFile(b);
    }
  }
  Outcome out;
  out.pass = differing == 0;
  out.detail = Format("%.0f CSV/JSONL files compared across re-runs, %.0f differ",
                      compared, differing);
  return out;
}

}  // namespace

int main() {
  fs::create_directories(kOut);
  std::vector<std::pair<std::string, Outcome>> results;
  const auto report = [&](const std::string& name, const Outcome& o) {
    results.emplace_back(name, o);
    std::printf("criterion %zu %s: %s (%s)\n", results.size(), name.c_str(),
                o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  };

  report("itsdt incremental equals batch", IncrementalEqualsBatch());
  report("gradient suite", GradientSuite());
  report("newton one-step", NewtonOneStep());

  const runner::Scenario corridor = Load("corridor");
  CorridorRuns runs;
  runs.lambda1 = corridor.planner.lambda1;
  runs.online_gt = Run(corridor, "online,gt", "online_gt");
  runs.gtmap_gt = Run(corridor, "gt-map,gt", "gtmap_gt");
  runs.gtmap_noisy = Run(corridor, "gt-map,noisy:1", "gtmap_noisy");
  report("ablation ordering", Ablation(runs));
  report("real-time budget", RealTime(runs.online_gt));
  report("map-update decay", MapDecay());

  std::vector<std::pair<std::string, runner::RunReport>> safety_runs = {
      {"corridor/online,gt", runs.online_gt},
      {"corridor/gt-map,gt", runs.gtmap_gt},
      {"corridor/gt-map,noisy:1", runs.gtmap_noisy}};
  for (const char* name : {"orbit", "open_field"}) {
    const runner::Scenario s = Load(name);
    for (const char* mode : {"online,gt", "gt-map,gt", "online,kf", "online,noisy:1"}) {
      std::string tag = mode;
      std::replace(tag.begin(), tag.end(), ',', '_');
      std::replace(tag.begin(), tag.end(), ':', '_');
      safety_runs.emplace_back(std::string(name) + "/" + mode, Run(s, mode, tag));
    }
  }
  report("safety", Safety(safety_runs));
  report("determinism", Determinism());

  int failed = 0;
  for (const auto& [name, o] : results) failed += !o.pass;
  std::printf("%zu/%zu criteria passed\n", results.size() - failed,
              results.size());
  return failed == 0 ? 0 : 1;
}
