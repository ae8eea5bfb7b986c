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

#include "aerocine/forecast/observation_io.h"

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace aerocine {
namespace forecast {

std::vector<ActorObservation> ReadObservations(std::istream& in) {
  std::vector<ActorObservation> observations;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      ActorObservation obs;
      obs.timestamp = j.at("t").get<double>();
      obs.position = Eigen::Vector3d(j.at("x").get<double>(),
                                     j.at("y").get<double>(),
                                     j.at("z").get<double>());
      obs.heading = NormalizeAngle(j.at("psi").get<double>());
      observations.push_back(obs);
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error("observation line " +
                               std::to_string(line_number) + ": " + e.what());
    }
  }
  return observations;
}

void WriteObservations(std::ostream& out,
                       std::span<const ActorObservation> observations) {
  for (const auto& obs : observations) {
    const nlohmann::json j = {{"t", obs.timestamp},
                              {"x", obs.position.x()},
                              {"y", obs.position.y()},
                              {"z", obs.position.z()},
                              {"psi", obs.heading}};
    out << j.dump() << "\n";
  }
}

}  // namespace forecast
}  // namespace aerocine
