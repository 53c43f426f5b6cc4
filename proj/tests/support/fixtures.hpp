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
#include <string>
#include <vector>

#include "graysynth/raster.hpp"

namespace graysynth::testing {

std::filesystem::path data_dir();
std::filesystem::path fonts_dir();
std::filesystem::path font_path(const std::string& file = "DejaVuSans.ttf");

/// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& child) const { return path_ / child; }

 private:
  std::filesystem::path path_;
};

RgbImage uniform_image(int width, int height, std::uint8_t gray);

/// Every row is 0,1,...,255,0,1,... so any window wider than 256 pixels
/// sees every gray level.
RgbImage cycling_image(int width, int height);

/// Background number `k` of a varied set: gradients, noise, stripes,
/// checkerboards and flat fields in different tones.
RgbImage varied_background(int k, int width = 640, int height = 480);

/// Writes `count` varied 640x480 PNG backgrounds into `dir`.
void write_backgrounds(const std::filesystem::path& dir, int count);

void write_text(const std::filesystem::path& file, const std::string& text);

std::string read_text(const std::filesystem::path& file);

}  // namespace graysynth::testing
