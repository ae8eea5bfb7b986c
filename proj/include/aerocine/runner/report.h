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

#ifndef AEROCINE_RUNNER_REPORT_H_
#define AEROCINE_RUNNER_REPORT_H_

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "aerocine/runner/closed_loop.h"
#include "json.hpp"

namespace aerocine {
namespace runner {

struct Aggregates {
  int cycles = 0;
  double avg_cost = 0.0;
  double median_cost = 0.0;
  double avg_smooth = 0.0;
  double avg_shot = 0.0;
  double avg_obs = 0.0;
  double avg_occ = 0.0;
  int plan_errors = 0;
  // Cycles whose warm start had positive clearance, and those among them
  // whose plan did not.
  int feasible_cycles = 0;
  int safety_violations = 0;
};

struct TimingAggregates {
  double avg_plan_ms = 0.0;
  double avg_map_ms = 0.0;
  double avg_cycle_ms = 0.0;
  double max_cycle_ms = 0.0;
  int budget_overruns = 0;
};

Aggregates ComputeAggregates(const std::vector<CycleRecord>& cycles);
TimingAggregates ComputeTimingAggregates(
    const std::vector<CycleTiming>& timings, double budget_ms);
double Median(std::vector<double> values);

nlohmann::json AggregatesToJson(const Aggregates& a);
nlohmann::json TimingToJson(const TimingAggregates& t);

// Doubles are written with 17 significant digits so they parse back to the
// same value.
std::string FormatDouble(double value);

void WriteCyclesCsv(std::ostream& out, const std::vector<CycleRecord>& cycles);
void WriteTrajectoryCsv(std::ostream& out,
                        const std::vector<CycleRecord>& cycles);
void WriteTimingCsv(std::ostream& out, const std::vector<CycleTiming>& timings);
void WriteMapCsv(std::ostream& out, const std::vector<MapRecord>& records);
void WriteMapTimingCsv(std::ostream& out, const std::vector<MapRecord>& records,
                       const std::vector<MapTiming>& timings);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Throws std::out_of_range for an unknown column.
  int Column(const std::string& name) const;
  std::vector<double> Numbers(const std::string& name) const;
};

// Plain comma-separated values without quoting.
CsvTable ReadCsv(std::istream& in);

// Writes `content` to dir / name and returns the name.
std::string WriteTextFile(const std::filesystem::path& dir,
                          const std::string& name, const std::string& content);
void WriteJsonFile(const std::filesystem::path& path,
                   const nlohmann::json& json);

}  // namespace runner
}  // namespace aerocine

#endif  // AEROCINE_RUNNER_REPORT_H_
