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

#include "graysynth/raster.hpp"

namespace graysynth {

/// Width of the sampled ring around the ink, in pixels.
inline constexpr int kBorderRadius = 2;

/// Square (Chebyshev) dilation. The canvas grows by `radius` on every side,
/// so input pixel (x, y) lands at (x + radius, y + radius).
GlyphMask dilate(const GlyphMask& mask, int radius);

/// dilate(mask, kBorderRadius) with the (re-centered) ink removed.
BorderMask border_of(const GlyphMask& mask);

namespace reference {

/// Direct window scan; O(w*h*(2r+1)^2). Kept for tests and benchmarks.
GlyphMask dilate(const GlyphMask& mask, int radius);

}  // namespace reference

}  // namespace graysynth
