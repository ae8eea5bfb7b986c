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

#include "aerocine/runner/report.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace aerocine {
namespace runner {
namespace {

double Mean(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (const double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

void Row(std::ostream& out, std::initializer_list<std::string> fields) {
  bool first = true;
  for (const std::string& f : fields) {
    if (!first) out << ',';
    out << f;
    first = false;
  }
  out << '\n';
}

std::string D(double v) { return FormatDouble(v); }
std::string I(int64_t v) { return std::to_string(v); }

}  // namespace

std::string FormatDouble(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

double Median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

Aggregates ComputeAggregates(const std::vector<CycleRecord>& cycles) {
  Aggregates a;
  a.cycles = static_cast<int>(cycles.size());
  std::vector<double> cost, smooth, shot, obs, occ;
  for (const CycleRecord& r : cycles) {
    cost.push_back(r.cost);
    smooth.push_back(r.smooth);
    shot.push_back(r.shot);
    obs.push_back(r.obs);
    occ.push_back(r.occ);
    if (r.plan_error) ++a.plan_errors;
    if (r.init_clearance > 0.0) {
      ++a.feasible_cycles;
      if (!(r.plan_clearance > 0.0)) ++a.safety_violations;
    }
  }
  a.avg_cost = Mean(cost);
  a.median_cost = Median(cost);
  a.avg_smooth = Mean(smooth);
  a.avg_shot = Mean(shot);
  a.avg_obs = Mean(obs);
  a.avg_occ = Mean(occ);
  return a;
}

TimingAggregates ComputeTimingAggregates(
    const std::vector<CycleTiming>& timings, double budget_ms) {
  TimingAggregates t;
  std::vector<double> plan, map, cycle;
  for (const CycleTiming& c : timings) {
    plan.push_back(c.plan_ms);
    map.push_back(c.integrate_ms + c.sdf_ms);
    cycle.push_back(c.cycle_ms);
    t.max_cycle_ms = std::max(t.max_cycle_ms, c.cycle_ms);
    if (c.cycle_ms > budget_ms) ++t.budget_overruns;
  }
  t.avg_plan_ms = Mean(plan);
  t.avg_map_ms = Mean(map);
  t.avg_cycle_ms = Mean(cycle);
  return t;
}

nlohmann::json AggregatesToJson(const Aggregates& a) {
  return nlohmann::json{{"cycles", a.cycles},
                        {"avg_cost", a.avg_cost},
                        {"median_cost", a.median_cost},
                        {"avg_J_smooth", a.avg_smooth},
                        {"avg_J_shot", a.avg_shot},
                        {"avg_J_obs", a.avg_obs},
                        {"avg_J_occ", a.avg_occ},
                        {"plan_errors", a.plan_errors},
                        {"feasible_cycles", a.feasible_cycles},
                        {"safety_violations", a.safety_violations}};
}

nlohmann::json TimingToJson(const TimingAggregates& t) {
  return nlohmann::json{{"avg_plan_ms", t.avg_plan_ms},
                        {"avg_map_ms", t.avg_map_ms},
                        {"avg_cycle_ms", t.avg_cycle_ms},
                        {"max_cycle_ms", t.max_cycle_ms},
                        {"budget_overruns", t.budget_overruns}};
}

void WriteCyclesCsv(std::ostream& out,
                    const std::vector<CycleRecord>& cycles) {
  out << "cycle,t,iters,converged,plan_error,J,J_smooth,J_shot,J_obs,J_occ,"
         "init_clearance,plan_clearance,rays,changes,updated_voxels\n";
  for (const CycleRecord& r : cycles) {
    Row(out, {I(r.cycle), D(r.t), I(r.iterations), I(r.converged),
              I(r.plan_error), D(r.cost), D(r.smooth), D(r.shot), D(r.obs),
              D(r.occ), D(r.init_clearance), D(r.plan_clearance), I(r.rays),
              I(r.changes), I(r.updated_voxels)});
  }
}

void WriteTrajectoryCsv(std::ostream& out,
                        const std::vector<CycleRecord>& cycles) {
  out << "cycle,t,x,y,z,psi,actor_x,actor_y,actor_z\n";
  for (const CycleRecord& r : cycles) {
    Row(out, {I(r.cycle), D(r.t), D(r.drone.x()), D(r.drone.y()),
              D(r.drone.z()), D(r.drone_heading), D(r.actor.x()),
              D(r.actor.y()), D(r.actor.z())});
  }
}

void WriteTimingCsv(std::ostream& out,
                    const std::vector<CycleTiming>& timings) {
  out << "cycle,scan_ms,integrate_ms,sdf_ms,snapshot_ms,forecast_ms,plan_ms,"
         "cycle_ms\n";
  for (const CycleTiming& c : timings) {
    Row(out, {I(c.cycle), D(c.scan_ms), D(c.integrate_ms), D(c.sdf_ms),
              D(c.snapshot_ms), D(c.forecast_ms), D(c.plan_ms),
              D(c.cycle_ms)});
  }
}

void WriteMapCsv(std::ostream& out, const std::vector<MapRecord>& records) {
  out << "phase,index,t,rays,changes,updated_voxels,border_count,"
         "batch_checked,batch_match\n";
  for (const MapRecord& r : records) {
    Row(out, {r.phase, I(r.index), D(r.t), I(r.rays), I(r.changes),
              I(r.updated_voxels), I(r.border_count), I(r.batch_checked),
              I(r.batch_match)});
  }
}

void WriteMapTimingCsv(std::ostream& out,
                       const std::vector<MapRecord>& records,
                       const std::vector<MapTiming>& timings) {
  out << "phase,index,t,integrate_ms,sdf_ms,batch_ms\n";
  for (size_t i = 0; i < records.size() && i < timings.size(); ++i) {
    Row(out, {records[i].phase, I(records[i].index), D(records[i].t),
              D(timings[i].integrate_ms), D(timings[i].sdf_ms),
              D(timings[i].batch_ms)});
  }
}

int CsvTable::Column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw std::out_of_range("no CSV column " + name);
  return static_cast<int>(it - header.begin());
}

std::vector<double> CsvTable::Numbers(const std::string& name) const {
  const int col = Column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(std::stod(row.at(col)));
  return out;
}

CsvTable ReadCsv(std::istream& in) {
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (first) {
      table.header = std::move(fields);
      first = false;
    } else {
      table.rows.push_back(std::move(fields));
    }
  }
  return table;
}

std::string WriteTextFile(const std::filesystem::path& dir,
                          const std::string& name,
                          const std::string& content) {
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  out << content;
  if (!out) throw std::runtime_error("failed writing " + (dir / name).string());
  return name;
}

void WriteJsonFile(const std::filesystem::path& path,
                   const nlohmann::json& json) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << json.dump(2) << '\n';
}

}  // namespace runner
}  // namespace aerocine
