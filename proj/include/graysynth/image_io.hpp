/* Copyright 2026 The graysynth Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "graysynth/raster.hpp"

namespace graysynth {

/// Decodes PNG/JPEG (or anything else the codec accepts) to RGB. Gray and
/// RGBA inputs are expanded/flattened to three channels.
/// Throws Error(Io) if the file is missing or cannot be decoded.
RgbImage read_image(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_png(const RgbImage& image);

/// Throws Error(Io) with the path on failure.
void write_png(const std::filesystem::path& path, const RgbImage& image);

}  // namespace graysynth
