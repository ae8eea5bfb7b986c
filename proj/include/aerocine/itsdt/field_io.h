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

#ifndef AEROCINE_ITSDT_FIELD_IO_H_
#define AEROCINE_ITSDT_FIELD_IO_H_

#include <array>
#include <filesystem>

#include "aerocine/itsdt/field_snapshot.h"

namespace aerocine {
namespace itsdt {

inline constexpr std::array<char, 4> kFieldMagic = {'A', 'O', 'S', 'F'};

// Same 32-byte header as grid snapshots, followed by row-major float32
// signed distances, plus a JSON sidecar with the grid config and truncation.
void WriteFieldSnapshot(const FieldSnapshot& field,
                        const std::filesystem::path& path);
// Values round-trip at float32 precision.
FieldSnapshot ReadFieldSnapshot(const std::filesystem::path& path);

}  // namespace itsdt
}  // namespace aerocine

#endif  // AEROCINE_ITSDT_FIELD_IO_H_
