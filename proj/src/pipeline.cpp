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

#include "graysynth/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "graysynth/error.hpp"
#include "graysynth/morphology.hpp"

namespace graysynth {

namespace {

using Clock = std::chrono::steady_clock;

double ms_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

std::string describe(Placement p) { return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")"; }

void check_fits(int image_w, int image_h, Placement at, int w, int h, const char* what) {
  if (at.x < 0 || at.y < 0 || at.x + w > image_w || at.y + h > image_h) {
    throw Error(ErrorKind::OutOfBounds, std::string(what) + " of " + std::to_string(w) + "x" + std::to_string(h) +
                                            " at " + describe(at) + " exceeds the " + std::to_string(image_w) + "x" +
                                            std::to_string(image_h) + " image");
  }
}

}  // namespace

void SynthesisConfig::validate() const {
  thresholds.validate();
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::InvalidArgument, msg); };
  if (max_retries < 0) fail("max_retries must be >= 0");
  if (words_per_image < 1) fail("words_per_image must be >= 1");
  if (min_pixel_height < 1 || max_pixel_height < min_pixel_height) {
    fail("pixel height range must satisfy 1 <= min <= max");
  }
  if (!std::isfinite(min_rotation_deg) || !std::isfinite(max_rotation_deg) || max_rotation_deg < min_rotation_deg) {
    fail("rotation range must be finite with min <= max");
  }
  if (min_background.width < 1 || min_background.height < 1) fail("minimum background size must be positive");
}

GrayHistogram sample_border_grays(const BackgroundState& state, Placement placement, const BorderMask& border) {
  check_fits(state.width, state.height, placement, border.width, border.height, "border");
  GrayHistogram hist;
  for (int y = 0; y < border.height; ++y) {
    const std::uint8_t* ring = border.bits.data() + border.index(0, y);
    const std::uint8_t* px = state.pixel(placement.x, placement.y + y);
    for (int x = 0; x < border.width; ++x, px += 3) {
      if (ring[x]) hist.add_unchecked(static_cast<std::uint8_t>(to_gray(px[0], px[1], px[2])));
    }
  }
  return hist;
}

PlaceOutcome try_place(const BorderMask& border, const BackgroundState& state, const SynthesisConfig& config,
                       Rng& rng) {
  if (border.width > state.width || border.height > state.height) {
    throw Error(ErrorKind::NoFit, "word canvas " + std::to_string(border.width) + "x" +
                                      std::to_string(border.height) + " does not fit the " +
                                      std::to_string(state.width) + "x" + std::to_string(state.height) + " image");
  }
  PlaceOutcome outcome;
  outcome.tried.reserve(static_cast<std::size_t>(config.max_retries));
  for (int attempt = 0; attempt < config.max_retries; ++attempt) {
    const Placement at{static_cast<int>(rng.between(0, state.width - border.width)),
                       static_cast<int>(rng.between(0, state.height - border.height))};
    outcome.tried.push_back(at);
    outcome.analysis.histogram = sample_border_grays(state, at, border);
    outcome.analysis.candidates = design_colors(outcome.analysis.histogram, config.thresholds);
    if (!outcome.analysis.candidates.empty()) {
      outcome.placement = at;
      outcome.retries_used = attempt;
      return outcome;
    }
  }
  outcome.retries_used = config.max_retries;
  return outcome;
}

PlaceOutcome try_place(const FontFace& face, std::string_view word, const TextStyle& style,
                       const BackgroundState& state, const SynthesisConfig& config, Rng& rng) {
  const RenderedWord rendered = rasterize(face, word, style);
  return try_place(border_of(rendered.mask), state, config, rng);
}

int pick_color(const GrayLevelSet& candidates, Rng& rng) {
  if (candidates.empty()) throw Error(ErrorKind::EmptyCandidates, "no candidate gray to pick from");
  return candidates.nth(static_cast<std::size_t>(rng.below(candidates.size())));
}

void composite(BackgroundState& state, const GlyphMask& mask, std::span<const std::uint8_t> coverage,
               Placement ink_origin, int gray, bool alpha_blend) {
  check_fits(state.width, state.height, ink_origin, mask.width, mask.height, "mask");
  if (gray < 0 || gray > 255) throw Error(ErrorKind::InvalidGrayLevel, "gray " + std::to_string(gray));
  const bool blend = alpha_blend && coverage.size() == mask.bits.size();
  const auto g = static_cast<std::uint8_t>(gray);
  for (int y = 0; y < mask.height; ++y) {
    std::uint8_t* px = state.pixel(ink_origin.x, ink_origin.y + y);
    for (int x = 0; x < mask.width; ++x, px += 3) {
      const std::size_t i = mask.index(x, y);
      if (mask.bits[i]) {
        px[0] = px[1] = px[2] = g;
      } else if (blend && coverage[i] != 0) {
        const int a = coverage[i];
        for (int c = 0; c < 3; ++c) px[c] = static_cast<std::uint8_t>((px[c] * (255 - a) + gray * a + 127) / 255);
      }
    }
  }
}

Quad place_quad(const Quad& quad, Placement ink_origin, int width, int height) {
  Quad out;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    out[i] = {std::clamp(quad[i].x + ink_origin.x, 0.0, static_cast<double>(width)),
              std::clamp(quad[i].y + ink_origin.y, 0.0, static_cast<double>(height))};
  }
  return out;
}

BoundingBox hull_of(const Quad& quad) {
  BoundingBox box{quad[0].x, quad[0].y, quad[0].x, quad[0].y};
  for (const auto& p : quad) {
    box.x0 = std::min(box.x0, p.x);
    box.y0 = std::min(box.y0, p.y);
    box.x1 = std::max(box.x1, p.x);
    box.y1 = std::max(box.y1, p.y);
  }
  return box;
}

ImageResult synthesize_image(BackgroundState background, std::span<const std::string> words,
                             const FontLibrary& fonts, const SynthesisConfig& config, Rng& rng) {
  ImageResult result;
  result.image = std::move(background);
  auto& image = result.image;

  for (const std::string& word : words) {
    TextStyle style;
    style.font_id = static_cast<int>(rng.below(fonts.size()));
    style.pixel_height = static_cast<int>(rng.between(config.min_pixel_height, config.max_pixel_height));
    style.rotation_deg = rng.between_real(config.min_rotation_deg, config.max_rotation_deg);

    auto abandon = [&](std::string reason, int retries, std::vector<Placement> tried) {
      result.abandoned.push_back({word, style, std::move(reason), retries, std::move(tried)});
    };

    const auto t0 = Clock::now();
    RenderedWord rendered;
    BorderMask border;
    try {
      rendered = rasterize(fonts.at(style.font_id).face, word, style);
      border = border_of(rendered.mask);
    } catch (const Error& e) {
      result.times.rasterize_ms += ms_between(t0, Clock::now());
      abandon(std::string(to_string(e.kind())), 0, {});
      continue;
    }
    const auto t1 = Clock::now();
    result.times.rasterize_ms += ms_between(t0, t1);

    PlaceOutcome outcome;
    try {
      outcome = try_place(border, image, config, rng);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoFit) throw;
      result.times.analyze_ms += ms_between(t1, Clock::now());
      abandon("NoFit", 0, {});
      continue;
    }
    if (!outcome.placed()) {
      result.times.analyze_ms += ms_between(t1, Clock::now());
      abandon("Abandoned", outcome.retries_used, std::move(outcome.tried));
      continue;
    }
    const int gray = pick_color(outcome.analysis.candidates, rng);
    const auto t2 = Clock::now();
    result.times.analyze_ms += ms_between(t1, t2);

    const Placement ink_origin{outcome.placement->x + kBorderRadius, outcome.placement->y + kBorderRadius};
    composite(image, rendered.mask, rendered.coverage, ink_origin, gray, config.alpha_blend);
    result.times.composite_ms += ms_between(t2, Clock::now());

    TextInstance inst;
    inst.word = word;
    inst.style = style;
    inst.placement = *outcome.placement;
    inst.chosen_gray = gray;
    inst.candidate_count = static_cast<int>(outcome.analysis.candidates.size());
    inst.retries_used = outcome.retries_used;
    inst.quad = place_quad(rendered.quad, ink_origin, image.width, image.height);
    inst.bbox = hull_of(inst.quad);
    inst.analysis = std::move(outcome.analysis);
    result.instances.push_back(std::move(inst));
  }
  return result;
}

}  // namespace graysynth
