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

#include "aerocine/planner/planner_config.h"

#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>

namespace aerocine {
namespace planner {

void PlannerConfig::Validate() const {
  const auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  require(lambda1 >= 0.0 && lambda2 >= 0.0 && lambda3 >= 0.0,
          "cost weights must be non-negative");
  require(!alpha.empty(), "alpha needs at least one difference order");
  for (const double a : alpha) {
    require(a >= 0.0, "smoothness weights must be non-negative");
  }
  require(epsilon_obs > 0.0, "epsilon_obs must be positive");
  require(eta > 0.0, "eta must be positive");
  require(max_iterations >= 1, "max_iterations must be at least 1");
  require(grad_tolerance >= 0.0, "grad_tolerance must be non-negative");
  require(waypoints >= d_max() + 1 && waypoints >= 2,
          "waypoints must exceed the highest difference order");
  require(horizon > 0.0, "horizon must be positive");
  require(occlusion_samples >= 2, "occlusion_samples must be at least 2");
}

nlohmann::json PlannerConfigToJson(const PlannerConfig& config) {
  return nlohmann::json{{"lambda1", config.lambda1},
                        {"lambda2", config.lambda2},
                        {"lambda3", config.lambda3},
                        {"alpha", config.alpha},
                        {"epsilon_obs", config.epsilon_obs},
                        {"eta", config.eta},
                        {"max_iterations", config.max_iterations},
                        {"grad_tolerance", config.grad_tolerance},
                        {"waypoints", config.waypoints},
                        {"horizon", config.horizon},
                        {"occlusion_samples", config.occlusion_samples}};
}

PlannerConfig PlannerConfigFromJson(const nlohmann::json& json) {
  static const std::set<std::string> kKeys = {
      "lambda1",        "lambda2",   "lambda3",      "alpha",
      "epsilon_obs",    "eta",       "max_iterations", "grad_tolerance",
      "waypoints",      "horizon",   "occlusion_samples"};
  if (!json.is_object()) {
    throw std::invalid_argument("planner config must be a JSON object");
  }
  for (const auto& [key, value] : json.items()) {
    if (!kKeys.contains(key)) {
      throw std::invalid_argument("unknown planner config key '" + key + "'");
    }
  }
  PlannerConfig config;
  try {
    if (json.contains("lambda1")) config.lambda1 = json["lambda1"].get<double>();
    if (json.contains("lambda2")) config.lambda2 = json["lambda2"].get<double>();
    if (json.contains("lambda3")) config.lambda3 = json["lambda3"].get<double>();
    if (json.contains("alpha")) {
      config.alpha = json["alpha"].get<std::vector<double>>();
    }
    if (json.contains("epsilon_obs")) {
      config.epsilon_obs = json["epsilon_obs"].get<double>();
    }
    if (json.contains("eta")) config.eta = json["eta"].get<double>();
    if (json.contains("max_iterations")) {
      config.max_iterations = json["max_iterations"].get<int>();
    }
    if (json.contains("grad_tolerance")) {
      config.grad_tolerance = json["grad_tolerance"].get<double>();
    }
    if (json.contains("waypoints")) {
      config.waypoints = json["waypoints"].get<int>();
    }
    if (json.contains("horizon")) config.horizon = json["horizon"].get<double>();
    if (json.contains("occlusion_samples")) {
      config.occlusion_samples = json["occlusion_samples"].get<int>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("planner config: ") + e.what());
  }
  config.Validate();
  return config;
}

PlannerConfig LoadPlannerConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
  return PlannerConfigFromJson(json);
}

}  // namespace planner
}  // namespace aerocine
