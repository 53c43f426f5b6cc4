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

// Per-image synthesis: pick a spot, look at the background under the word's
// border ring, choose a gray far from everything seen there, and paint.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "graysynth/assets.hpp"
#include "graysynth/font.hpp"
#include "graysynth/gray_analysis.hpp"
#include "graysynth/raster.hpp"
#include "graysynth/rng.hpp"

namespace graysynth {

struct SynthesisConfig {
  AnalysisThresholds thresholds;
  int max_retries = 20;
  int words_per_image = 1;
  int min_pixel_height = 16;
  int max_pixel_height = 64;
  double min_rotation_deg = -15.0;
  double max_rotation_deg = 15.0;
  std::uint64_t seed = 0;
  bool alpha_blend = false;
  MinDims min_background{};

  /// Throws Error(InvalidArgument) naming the offending field.
  void validate() const;
};

/// Top-left corner of the dilated word canvas inside the image. The ink
/// itself starts kBorderRadius pixels further in on both axes.
struct Placement {
  int x = 0;
  int y = 0;
  friend bool operator==(const Placement&, const Placement&) = default;
};

struct BoundingBox {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// Histogram and candidate set behind one color decision.
struct ColorAnalysis {
  GrayHistogram histogram;
  GrayLevelSet candidates;
};

struct TextInstance {
  std::string word;
  TextStyle style;
  Placement placement;
  int chosen_gray = 0;
  int candidate_count = 0;
  int retries_used = 0;
  Quad quad{};
  BoundingBox bbox;
  ColorAnalysis analysis;
};

struct AbandonedWord {
  std::string word;
  TextStyle style;
  /// "Abandoned" when every retry came back empty, otherwise the error kind
  /// (NoFit, MissingGlyph, ZeroArea).
  std::string reason;
  int retries_used = 0;
  std::vector<Placement> tried;
};

struct StageTimes {
  double rasterize_ms = 0.0;
  double analyze_ms = 0.0;
  double composite_ms = 0.0;

  StageTimes& operator+=(const StageTimes& o) {
    rasterize_ms += o.rasterize_ms;
    analyze_ms += o.analyze_ms;
    composite_ms += o.composite_ms;
    return *this;
  }
};

struct ImageResult {
  std::uint64_t index = 0;
  std::size_t background_id = 0;
  RgbImage image;
  std::vector<TextInstance> instances;
  std::vector<AbandonedWord> abandoned;
  StageTimes times;
};

/// floor((r + g + b) / 3).
constexpr int to_gray(int r, int g, int b) noexcept { return (r + g + b) / 3; }

/// Histogram of to_gray over the image pixels under the border ring.
/// Throws Error(OutOfBounds) if the ring does not fit at `placement`.
GrayHistogram sample_border_grays(const BackgroundState& state, Placement placement, const BorderMask& border);

struct PlaceOutcome {
  /// Unset when every retry was exhausted.
  std::optional<Placement> placement;
  ColorAnalysis analysis;
  int retries_used = 0;
  std::vector<Placement> tried;

  bool placed() const noexcept { return placement.has_value(); }
};

/// Up to config.max_retries uniformly drawn placements; the first whose
/// candidate set is non-empty wins (retries_used = its 0-based attempt).
/// When none succeeds the outcome is unplaced with retries_used equal to
/// max_retries. Throws Error(NoFit) if the ring is larger than the image.
PlaceOutcome try_place(const BorderMask& border, const BackgroundState& state, const SynthesisConfig& config,
                       Rng& rng);

/// Convenience form that rasterizes first.
PlaceOutcome try_place(const FontFace& face, std::string_view word, const TextStyle& style,
                       const BackgroundState& state, const SynthesisConfig& config, Rng& rng);

/// Uniform draw from a non-empty set; throws Error(EmptyCandidates).
int pick_color(const GrayLevelSet& candidates, Rng& rng);

/// Paints (gray, gray, gray) under every ink bit, with the mask's top-left at
/// `ink_origin`. With `alpha_blend`, pixels that are partially covered but
/// not ink are blended toward the gray by their coverage.
/// Throws Error(OutOfBounds) if the mask does not fit.
void composite(BackgroundState& state, const GlyphMask& mask, std::span<const std::uint8_t> coverage,
               Placement ink_origin, int gray, bool alpha_blend);

/// Processes `words` in order against the evolving image. Each word gets a
/// uniformly drawn font, height and rotation. Failures of a single word
/// (NoFit, MissingGlyph, ZeroArea, exhausted retries) are recorded as
/// abandonments.
ImageResult synthesize_image(BackgroundState background, std::span<const std::string> words,
                             const FontLibrary& fonts, const SynthesisConfig& config, Rng& rng);

/// Corner points shifted by `ink_origin` and clamped to the image.
Quad place_quad(const Quad& quad, Placement ink_origin, int width, int height);
BoundingBox hull_of(const Quad& quad);

}  // namespace graysynth
