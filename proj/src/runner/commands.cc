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

#include "aerocine/runner/commands.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace aerocine {
namespace runner {
namespace {

constexpr char kVersion[] = "0.1.0";

std::string Csv(const auto& write) {
  std::ostringstream out;
  write(out);
  return out.str();
}

nlohmann::json Manifest(const std::string& command, const Scenario& scenario,
                        const nlohmann::json& files) {
  return nlohmann::json{{"tool", "aerocine"},
                        {"version", kVersion},
                        {"command", command},
                        {"scenario", scenario.name},
                        {"seed", scenario.seed},
                        {"files", files}};
}

void MakeDir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string());
}

}  // namespace

RunReport run_scenario(const Scenario& scenario, const RunMode& mode,
                       const RunOptions& options,
                       const std::filesystem::path& out_dir, bool dump_scans) {
  MakeDir(out_dir);
  RunOptions opts = options;
  std::ostringstream observations;
  std::ofstream scans;
  if (dump_scans) {
    scans.open(out_dir / "scans.bin", std::ios::binary);
    if (!scans) throw std::runtime_error("cannot write scans.bin");
    opts.scan_dump = &scans;
  }
  opts.observation_dump = &observations;

  RunReport report;
  report.result = RunClosedLoop(scenario, mode, opts);
  report.aggregates = ComputeAggregates(report.result.cycles);
  report.timing =
      ComputeTimingAggregates(report.result.timings, scenario.budget_ms);

  nlohmann::json files = nlohmann::json::array();
  const auto& r = report.result;
  files.push_back(WriteTextFile(out_dir, "cycles.csv", Csv([&](auto& o) {
                                  WriteCyclesCsv(o, r.cycles);
                                })));
  files.push_back(WriteTextFile(out_dir, "trajectory.csv", Csv([&](auto& o) {
                                  WriteTrajectoryCsv(o, r.cycles);
                                })));
  files.push_back(WriteTextFile(out_dir, "timing.csv", Csv([&](auto& o) {
                                  WriteTimingCsv(o, r.timings);
                                })));
  files.push_back(
      WriteTextFile(out_dir, "observations.jsonl", observations.str()));
  if (mode.map == MapSource::kOnline) {
    files.push_back(WriteTextFile(out_dir, "map_updates.csv", Csv([&](auto& o) {
                                    WriteMapCsv(o, r.map_updates);
                                  })));
    files.push_back(WriteTextFile(out_dir, "map_timing.csv", Csv([&](auto& o) {
                                    WriteMapTimingCsv(o, r.map_updates,
                                                      r.map_timings);
                                  })));
  }
  if (dump_scans) files.push_back("scans.bin");

  nlohmann::json json = {{"scenario", scenario.name},
                         {"mode", mode.ToString()},
                         {"seed", scenario.seed},
                         {"two_lane", options.two_lane},
                         {"budget_ms", scenario.budget_ms},
                         {"aggregates", AggregatesToJson(report.aggregates)},
                         {"timing", TimingToJson(report.timing)}};
  WriteJsonFile(out_dir / "report.json", json);
  files.push_back("report.json");
  nlohmann::json manifest = Manifest("run", scenario, files);
  manifest["mode"] = mode.ToString();
  manifest["scenario_config"] = ScenarioToJson(scenario);
  WriteJsonFile(out_dir / "manifest.json", manifest);
  return report;
}

nlohmann::json ComparisonSummary::ToJson(const Scenario& scenario,
                                         const RunMode& mode_a,
                                         const RunMode& mode_b) const {
  return nlohmann::json{
      {"scenario", scenario.name},
      {"a", {{"mode", mode_a.ToString()},
             {"aggregates", AggregatesToJson(a.aggregates)},
             {"timing", TimingToJson(a.timing)}}},
      {"b", {{"mode", mode_b.ToString()},
             {"aggregates", AggregatesToJson(b.aggregates)},
             {"timing", TimingToJson(b.timing)}}},
      {"cost_ratio", cost_ratio},
      {"median_ratio", median_ratio},
      {"rms_divergence", rms_divergence},
      {"weighted_delta",
       {{"J_smooth", delta_smooth},
        {"J_shot", delta_shot},
        {"J_obs", delta_obs},
        {"J_occ", delta_occ}}}};
}

ComparisonSummary compare_modes(const Scenario& scenario, const RunMode& a,
                                const RunMode& b, const RunOptions& options,
                                const std::filesystem::path& out_dir) {
  MakeDir(out_dir);
  ComparisonSummary summary;
  summary.a = run_scenario(scenario, a, options, out_dir / "a");
  summary.b = run_scenario(scenario, b, options, out_dir / "b");
  const Aggregates& ga = summary.a.aggregates;
  const Aggregates& gb = summary.b.aggregates;
  const auto ratio = [](double num, double den) {
    if (den == 0.0) return num == 0.0 ? 1.0 : INFINITY;
    return num / den;
  };
  summary.cost_ratio = ratio(gb.avg_cost, ga.avg_cost);
  summary.median_ratio = ratio(gb.median_cost, ga.median_cost);
  const auto& ca = summary.a.result.cycles;
  const auto& cb = summary.b.result.cycles;
  double sum = 0.0;
  const size_t count = std::min(ca.size(), cb.size());
  for (size_t i = 0; i < count; ++i) {
    sum += (ca[i].drone - cb[i].drone).squaredNorm();
  }
  summary.rms_divergence = count > 0 ? std::sqrt(sum / count) : 0.0;
  const planner::PlannerConfig& p = scenario.planner;
  summary.delta_smooth = gb.avg_smooth - ga.avg_smooth;
  summary.delta_shot = p.lambda1 * (gb.avg_shot - ga.avg_shot);
  summary.delta_obs = p.lambda2 * (gb.avg_obs - ga.avg_obs);
  summary.delta_occ = p.lambda3 * (gb.avg_occ - ga.avg_occ);

  WriteJsonFile(out_dir / "comparison.json", summary.ToJson(scenario, a, b));
  nlohmann::json manifest = Manifest(
      "compare", scenario, {"comparison.json", "a/manifest.json",
                            "b/manifest.json"});
  manifest["mode_a"] = a.ToString();
  manifest["mode_b"] = b.ToString();
  WriteJsonFile(out_dir / "manifest.json", manifest);
  return summary;
}

nlohmann::json BenchMapSummary::ToJson() const {
  return nlohmann::json{
      {"map_updates", result.map_updates.size()},
      {"first_update_ms", first_update_ms},
      {"median_update_ms_after_30s", median_late_update_ms},
      {"incremental_ms_after_10s", incremental_after_warmup_ms},
      {"batch_ms_after_10s_estimate", batch_after_warmup_ms},
      {"batch_checks", batch_checks},
      {"batch_mismatches", batch_mismatches}};
}

BenchMapSummary bench_map(const Scenario& scenario, int batch_every,
                          const std::filesystem::path& out_dir) {
  if (batch_every < 1) {
    throw std::invalid_argument("batch_every must be at least 1");
  }
  MakeDir(out_dir);
  RunOptions options;
  options.batch_every = batch_every;
  BenchMapSummary s;
  s.result = RunClosedLoop(scenario, RunMode{}, options);
  const auto& records = s.result.map_updates;
  const auto& timings = s.result.map_timings;
  if (!timings.empty()) s.first_update_ms = timings.front().sdf_ms;
  std::vector<double> late;
  for (size_t i = 0; i < records.size(); ++i) {
    const bool flight = records[i].phase == "flight";
    if (flight && records[i].t >= 30.0) late.push_back(timings[i].sdf_ms);
    if (flight && records[i].t >= 10.0) {
      s.incremental_after_warmup_ms += timings[i].sdf_ms;
      if (records[i].batch_checked) {
        s.batch_after_warmup_ms += timings[i].batch_ms * batch_every;
      }
    }
    if (records[i].batch_checked) {
      ++s.batch_checks;
      if (!records[i].batch_match) ++s.batch_mismatches;
    }
  }
  s.median_late_update_ms = Median(late);

  nlohmann::json files = nlohmann::json::array();
  files.push_back(WriteTextFile(out_dir, "map_updates.csv", Csv([&](auto& o) {
                                  WriteMapCsv(o, records);
                                })));
  files.push_back(WriteTextFile(out_dir, "map_timing.csv", Csv([&](auto& o) {
                                  WriteMapTimingCsv(o, records, timings);
                                })));
  WriteJsonFile(out_dir / "bench.json", s.ToJson());
  files.push_back("bench.json");
  nlohmann::json manifest = Manifest("bench-map", scenario, files);
  manifest["batch_every"] = batch_every;
  WriteJsonFile(out_dir / "manifest.json", manifest);
  return s;
}

}  // namespace runner
}  // namespace aerocine
