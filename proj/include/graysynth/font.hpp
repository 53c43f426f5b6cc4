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

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "graysynth/raster.hpp"

namespace graysynth {

struct TextStyle {
  int font_id = 0;
  int pixel_height = 32;
  double rotation_deg = 0.0;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Corners of the rotated word box, clockwise on screen starting top-left
/// of the upright word.
using Quad = std::array<Point, 4>;

/// An immutable, parsed TrueType/OpenType face. Copies share the font data;
/// all queries are read-only and may run concurrently.
class FontFace {
 public:
  /// Throws Error(InvalidFont) when the bytes are not a usable font.
  static FontFace from_bytes(std::vector<std::uint8_t> bytes);
  /// Throws Error(Io) or Error(InvalidFont).
  static FontFace from_file(const std::filesystem::path& path);

  bool has_codepoint(char32_t codepoint) const;
  /// Family name from the `name` table, or an empty string.
  std::string family_name() const;

  struct Impl;
  const Impl& impl() const { return *impl_; }

 private:
  explicit FontFace(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

struct RenderedWord {
  /// Tight-cropped ink.
  GlyphMask mask;
  /// Antialiased coverage (0..255) over the same canvas as `mask`.
  std::vector<std::uint8_t> coverage;
  /// Rotated ink box in mask coordinates; may extend past the canvas.
  Quad quad{};
};

/// Decodes UTF-8; throws Error(InvalidArgument) on malformed input.
std::u32string decode_utf8(std::string_view text);

/// Renders `word` at `style.pixel_height` (ascent to descent), binarizes at
/// coverage >= 0.5, rotates by `style.rotation_deg` (counterclockwise on
/// screen, nearest neighbour) and crops to the ink.
///
/// Throws Error(MissingGlyph) if the face lacks a codepoint and
/// Error(ZeroArea) if nothing is inked.
RenderedWord rasterize(const FontFace& face, std::string_view word, const TextStyle& style);

}  // namespace graysynth
