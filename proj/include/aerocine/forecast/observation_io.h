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

#ifndef AEROCINE_FORECAST_OBSERVATION_IO_H_
#define AEROCINE_FORECAST_OBSERVATION_IO_H_

#include <iosfwd>
#include <span>
#include <vector>

#include "aerocine/forecast/actor_filter.h"

namespace aerocine {
namespace forecast {

// JSON lines, one {"t", "x", "y", "z", "psi"} object per observation. Blank
// lines are skipped. Throws std::runtime_error naming the offending line.
std::vector<ActorObservation> ReadObservations(std::istream& in);
void WriteObservations(std::ostream& out,
                       std::span<const ActorObservation> observations);

}  // namespace forecast
}  // namespace aerocine

#endif  // AEROCINE_FORECAST_OBSERVATION_IO_H_
