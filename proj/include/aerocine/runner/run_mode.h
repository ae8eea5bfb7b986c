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

#ifndef AEROCINE_RUNNER_RUN_MODE_H_
#define AEROCINE_RUNNER_RUN_MODE_H_

#include <string>

namespace aerocine {
namespace runner {

enum class MapSource { kOnline, kGroundTruth };
enum class ActorSource { kGroundTruth, kNoisy, kFiltered };

struct RunMode {
  MapSource map = MapSource::kOnline;
  ActorSource actor = ActorSource::kGroundTruth;
  double noise_amplitude = 0.0;  // m, kNoisy only

  // "<map>,<actor>", e.g. "online,gt" or "gt-map,noisy:1".
  std::string ToString() const;
  bool operator==(const RunMode&) const = default;
};

// Map: "online" or "gt-map". Throws std::invalid_argument.
MapSource ParseMapSource(const std::string& text);
// Actor: "gt", "noisy:<amplitude>" or "kf". Throws std::invalid_argument.
void ParseActorSource(const std::string& text, RunMode* mode);
// "<map>[,<actor>]"; the actor defaults to "gt".
RunMode ParseRunMode(const std::string& text);

}  // namespace runner
}  // namespace aerocine

#endif  // AEROCINE_RUNNER_RUN_MODE_H_
