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

#include "graysynth/morphology.hpp"

#include <vector>

#include "graysynth/error.hpp"

namespace graysynth {

namespace {

void check_radius(int radius) {
  if (radius < 0) throw Error(ErrorKind::InvalidArgument, "dilation radius must be >= 0");
}

}  // namespace

// The square structuring element is separable: a horizontal max over
// 2r+1 columns followed by a vertical max over 2r+1 rows. Each pass keeps a
// running count of set pixels inside the window.
GlyphMask dilate(const GlyphMask& mask, int radius) {
  check_radius(radius);
  const int w = mask.width;
  const int h = mask.height;
  const int ow = w + 2 * radius;
  const int oh = h + 2 * radius;
  const int window = 2 * radius + 1;

  // Horizontal pass: rows of the source, columns of the output.
  GlyphMask wide(ow, h);
  for (int y = 0; y < h; ++y) {
    const std::uint8_t* src = mask.bits.data() + mask.index(0, y);
    std::uint8_t* dst = wide.bits.data() + wide.index(0, y);
    int inside = 0;
    for (int X = 0; X < ow; ++X) {
      // Output column X covers source columns [X - 2r, X].
      if (X < w) inside += src[X];
      const int leaving = X - window;
      if (leaving >= 0 && leaving < w) inside -= src[leaving];
      dst[X] = inside > 0 ? 1 : 0;
    }
  }

  // Vertical pass in row order, one running count per column.
  GlyphMask out(ow, oh);
  std::vector<int> inside(static_cast<std::size_t>(ow), 0);
  for (int Y = 0; Y < oh; ++Y) {
    if (Y < h) {
      const std::uint8_t* row = wide.bits.data() + wide.index(0, Y);
      for (int X = 0; X < ow; ++X) inside[X] += row[X];
    }
    const int leaving = Y - window;
    if (leaving >= 0 && leaving < h) {
      const std::uint8_t* row = wide.bits.data() + wide.index(0, leaving);
      for (int X = 0; X < ow; ++X) inside[X] -= row[X];
    }
    std::uint8_t* dst = out.bits.data() + out.index(0, Y);
    for (int X = 0; X < ow; ++X) dst[X] = inside[X] > 0 ? 1 : 0;
  }
  return out;
}

BorderMask border_of(const GlyphMask& mask) {
  const GlyphMask grown = dilate(mask, kBorderRadius);
  BorderMask border(grown.width, grown.height);
  border.bits = grown.bits;
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      if (mask.at(x, y)) border.set(x + kBorderRadius, y + kBorderRadius, false);
    }
  }
  return border;
}

namespace reference {

GlyphMask dilate(const GlyphMask& mask, int radius) {
  check_radius(radius);
  GlyphMask out(mask.width + 2 * radius, mask.height + 2 * radius);
  for (int Y = 0; Y < out.height; ++Y) {
    for (int X = 0; X < out.width; ++X) {
      bool hit = false;
      for (int dy = -radius; dy <= radius && !hit; ++dy) {
        for (int dx = -radius; dx <= radius && !hit; ++dx) {
          const int x = X - radius + dx;
          const int y = Y - radius + dy;
          hit = x >= 0 && y >= 0 && x < mask.width && y < mask.height && mask.at(x, y);
        }
      }
      out.set(X, Y, hit);
    }
  }
  return out;
}

}  // namespace reference

}  // namespace graysynth
