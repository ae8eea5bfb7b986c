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

#include "aerocine/runner/run_mode.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace aerocine {
namespace runner {

std::string RunMode::ToString() const {
  std::string out = map == MapSource::kOnline ? "online" : "gt-map";
  switch (actor) {
    case ActorSource::kGroundTruth:
      return out + ",gt";
    case ActorSource::kFiltered:
      return out + ",kf";
    case ActorSource::kNoisy: {
      std::ostringstream amp;
      amp << noise_amplitude;
      return out + ",noisy:" + amp.str();
    }
  }
  return out;
}

MapSource ParseMapSource(const std::string& text) {
  if (text == "online") return MapSource::kOnline;
  if (text == "gt-map") return MapSource::kGroundTruth;
  throw std::invalid_argument("unknown map source '" + text +
                              "' (expected online or gt-map)");
}

void ParseActorSource(const std::string& text, RunMode* mode) {
  if (text == "gt") {
    mode->actor = ActorSource::kGroundTruth;
    mode->noise_amplitude = 0.0;
    return;
  }
  if (text == "kf") {
    mode->actor = ActorSource::kFiltered;
    mode->noise_amplitude = 0.0;
    return;
  }
  const std::string prefix = "noisy:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string amp = text.substr(prefix.size());
    size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(amp, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != amp.size() || !std::isfinite(value) ||
        value < 0.0) {
      throw std::invalid_argument("bad noise amplitude in '" + text + "'");
    }
    mode->actor = ActorSource::kNoisy;
    mode->noise_amplitude = value;
    return;
  }
  throw std::invalid_argument("unknown actor source '" + text +
                              "' (expected gt, noisy:<amp> or kf)");
}

RunMode ParseRunMode(const std::string& text) {
  RunMode mode;
  const size_t comma = text.find(',');
  mode.map = ParseMapSource(text.substr(0, comma));
  if (comma != std::string::npos) {
    ParseActorSource(text.substr(comma + 1), &mode);
  }
  return mode;
}

}  // namespace runner
}  // namespace aerocine
