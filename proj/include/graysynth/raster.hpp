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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace graysynth {

/// Row-major binary raster, one byte per pixel (0 or 1).
struct BinaryRaster {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;

  BinaryRaster() = default;
  BinaryRaster(int w, int h)
      : width(w), height(h), bits(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0) {}

  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x);
  }
  bool at(int x, int y) const noexcept { return bits[index(x, y)] != 0; }
  void set(int x, int y, bool value = true) noexcept { bits[index(x, y)] = value ? 1 : 0; }

  std::size_t count() const noexcept {
    return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
  }
  bool none() const noexcept { return count() == 0; }

  friend bool operator==(const BinaryRaster&, const BinaryRaster&) = default;
};

/// Text ink.
struct GlyphMask : BinaryRaster {
  using BinaryRaster::BinaryRaster;
};

/// Ring of background pixels around the ink, in dilated-canvas coordinates.
struct BorderMask : BinaryRaster {
  using BinaryRaster::BinaryRaster;
};

/// Interleaved 8-bit RGB image.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;

  RgbImage() = default;
  RgbImage(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h), rgb(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3, fill) {}

  std::size_t offset(int x, int y) const noexcept {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)) * 3;
  }
  const std::uint8_t* pixel(int x, int y) const noexcept { return rgb.data() + offset(x, y); }
  std::uint8_t* pixel(int x, int y) noexcept { return rgb.data() + offset(x, y); }

  void set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept {
    auto* p = pixel(x, y);
    p[0] = r;
    p[1] = g;
    p[2] = b;
  }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

/// The working image a word is analyzed against and composited into.
using BackgroundState = RgbImage;

}  // namespace graysynth
