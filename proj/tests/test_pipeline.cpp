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

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "graysynth/error.hpp"
#include "graysynth/morphology.hpp"
#include "graysynth/pipeline.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace graysynth;
namespace gt = graysynth::testing;

namespace {

const FontLibrary& library() {
  static const FontLibrary lib = FontLibrary::single(gt::font_path());
  return lib;
}

GlyphMask solid(int w, int h) {
  GlyphMask m(w, h);
  std::fill(m.bits.begin(), m.bits.end(), 1);
  return m;
}

GrayLevelSet ranges(int a0, int a1, int b0, int b1) {
  return GrayLevelSet::range(a0, a1) | GrayLevelSet::range(b0, b1);
}

SynthesisConfig fixed_style(int height) {
  SynthesisConfig c;
  c.min_pixel_height = c.max_pixel_height = height;
  c.min_rotation_deg = c.max_rotation_deg = 0.0;
  return c;
}

}  // namespace

TEST_CASE("to_gray") {
  CHECK(to_gray(255, 0, 0) == 85);
  CHECK(to_gray(10, 20, 30) == 20);
  CHECK(to_gray(255, 255, 254) == 254);
  CHECK(to_gray(255, 255, 255) == 255);
  CHECK(to_gray(0, 0, 0) == 0);
}

TEST_CASE("sample_border_grays") {
  const auto border = border_of(solid(3, 2));
  const auto h = sample_border_grays(gt::uniform_image(20, 20, 7), {4, 5}, border);
  CHECK(h[7] == border.count());
  CHECK(h.total() == border.count());

  CHECK(sample_border_grays(gt::uniform_image(20, 20, 7), {0, 0}, BorderMask(4, 4)).total() == 0);

  // Two-tone: left half gray 10, right half gray 200, border straddling the split.
  RgbImage img(20, 10);
  for (int y = 0; y < 10; ++y)
    for (int x = 0; x < 20; ++x) {
      const std::uint8_t g = x < 10 ? 10 : 200;
      img.set(x, y, g, g, g);
    }
  const auto ring = border_of(solid(4, 3));  // 8x7 canvas
  const Placement at{6, 1};
  std::uint64_t left = 0, right = 0;
  for (int y = 0; y < ring.height; ++y)
    for (int x = 0; x < ring.width; ++x)
      if (ring.at(x, y)) ++(at.x + x < 10 ? left : right);
  const auto split = sample_border_grays(img, at, ring);
  CHECK(split[10] == left);
  CHECK(split[200] == right);
  CHECK(split.total() == ring.count());

  CHECK_THROWS_AS(sample_border_grays(img, {13, 0}, ring), Error);
  CHECK_THROWS_AS(sample_border_grays(img, {-1, 0}, ring), Error);
}

TEST_CASE("try_place on a uniform background succeeds first time") {
  Rng rng(5);
  const SynthesisConfig config;
  const auto out = try_place(library().at(0).face, "hello", {0, 32, 0.0}, gt::uniform_image(200, 100, 128), config, rng);
  REQUIRE(out.placed());
  CHECK(out.retries_used == 0);
  CHECK(out.tried.size() == 1);
  CHECK(out.analysis.candidates == ranges(0, 111, 145, 255));
}

TEST_CASE("try_place abandons after max_retries on a full-spectrum background") {
  const auto state = gt::cycling_image(700, 120);
  const auto rendered = rasterize(library().at(0).face, "abandonment", {0, 64, 0.0});
  const auto border = border_of(rendered.mask);
  REQUIRE(border.width > 300);
  Rng rng(1);
  SynthesisConfig config;
  const auto out = try_place(border, state, config, rng);
  CHECK_FALSE(out.placed());
  CHECK(out.retries_used == 20);
  CHECK(out.tried.size() == 20);
  CHECK(out.analysis.candidates.empty());

  config.max_retries = 3;
  CHECK(try_place(border, state, config, rng).tried.size() == 3);
  config.max_retries = 0;
  const auto none = try_place(border, state, config, rng);
  CHECK_FALSE(none.placed());
  CHECK(none.tried.empty());
}

TEST_CASE("try_place reports NoFit for oversized words") {
  Rng rng(1);
  try {
    try_place(library().at(0).face, "much too wide", {0, 64, 0.0}, gt::uniform_image(100, 100, 0), {}, rng);
    FAIL("expected NoFit");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoFit);
  }
}

TEST_CASE("retries_used counts failed attempts before the success") {
  // Left half full-spectrum, right part flat: placements that land fully in
  // the flat area succeed.
  RgbImage img = gt::cycling_image(900, 60);
  for (int y = 0; y < 60; ++y)
    for (int x = 600; x < 900; ++x) img.set(x, y, 90, 90, 90);
  const auto border = border_of(solid(256, 10));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const auto out = try_place(border, img, {}, rng);
    REQUIRE(out.tried.size() == static_cast<std::size_t>(out.placed() ? out.retries_used + 1 : 20));
    if (out.placed()) {
      CHECK(out.placement == out.tried.back());
      for (std::size_t k = 0; k + 1 < out.tried.size(); ++k) {
        CHECK(design_colors(sample_border_grays(img, out.tried[k], border), {}).empty());
      }
    }
  }
}

TEST_CASE("pick_color") {
  Rng rng(3);
  CHECK(pick_color(GrayLevelSet{42}, rng) == 42);
  try {
    pick_color(GrayLevelSet{}, rng);
    FAIL("expected EmptyCandidates");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyCandidates);
  }
  const GrayLevelSet s{3, 70, 200};
  for (int i = 0; i < 100; ++i) CHECK(s.contains(pick_color(s, rng)));
}

TEST_CASE("pick_color is uniform (chi-square, alpha = 0.001)") {
  Rng rng(2026);
  std::vector<int> counts(256, 0);
  const int draws = 100000;
  const auto all = GrayLevelSet::all();
  for (int i = 0; i < draws; ++i) ++counts[static_cast<std::size_t>(pick_color(all, rng))];
  const double expected = draws / 256.0;
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // Upper 0.001 quantile of chi-square with 255 degrees of freedom.
  CHECK(chi2 < 330.52);
}

TEST_CASE("composite") {
  RgbImage base = gt::uniform_image(12, 12, 50);
  RgbImage state = base;
  composite(state, GlyphMask(4, 4), {}, {1, 1}, 0, false);
  CHECK(state == base);

  RgbImage full = base;
  composite(full, solid(12, 12), {}, {0, 0}, 0, false);
  CHECK(full == gt::uniform_image(12, 12, 0));

  composite(state, solid(5, 5), {}, {3, 3}, 200, false);
  int painted = 0, untouched = 0;
  for (int y = 0; y < 12; ++y)
    for (int x = 0; x < 12; ++x) {
      const auto* p = state.pixel(x, y);
      if (p[0] == 200 && p[1] == 200 && p[2] == 200) ++painted;
      if (p[0] == 50 && p[1] == 50 && p[2] == 50) ++untouched;
    }
  CHECK(painted == 25);
  CHECK(untouched == 144 - 25);

  CHECK_THROWS_AS(composite(state, solid(5, 5), {}, {8, 0}, 1, false), Error);
  CHECK_THROWS_AS(composite(state, solid(1, 1), {}, {0, 0}, 256, false), Error);
}

TEST_CASE("composite with alpha blending only touches partially covered pixels") {
  GlyphMask mask(3, 1);
  mask.set(1, 0);
  const std::vector<std::uint8_t> coverage{64, 255, 0};
  RgbImage state = gt::uniform_image(3, 1, 100);
  composite(state, mask, coverage, {0, 0}, 200, true);
  CHECK(state.pixel(1, 0)[0] == 200);
  CHECK(state.pixel(0, 0)[0] == (100 * 191 + 200 * 64 + 127) / 255);
  CHECK(state.pixel(2, 0)[0] == 100);

  RgbImage hard = gt::uniform_image(3, 1, 100);
  composite(hard, mask, coverage, {0, 0}, 200, false);
  CHECK(hard.pixel(0, 0)[0] == 100);
}

TEST_CASE("synthesize_image: instances are consistent with their analysis") {
  SynthesisConfig config;
  config.words_per_image = 4;
  const std::vector<std::string> words{"alpha", "beta", "gamma", "delta"};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const auto r = synthesize_image(gt::varied_background(static_cast<int>(seed)), words, library(), config, rng);
    CHECK(r.instances.size() + r.abandoned.size() == words.size());
    for (const auto& inst : r.instances) {
      CHECK(inst.analysis.candidates.contains(inst.chosen_gray));
      CHECK(inst.candidate_count == static_cast<int>(inst.analysis.candidates.size()));
      CHECK(inst.analysis.candidates == gt::candidate_oracle(inst.analysis.histogram, config.thresholds));
      CHECK(inst.retries_used <= config.max_retries);
      CHECK(inst.style.pixel_height >= config.min_pixel_height);
      CHECK(inst.style.pixel_height <= config.max_pixel_height);
      CHECK(std::abs(inst.style.rotation_deg) <= 15.0);
      const auto hull = hull_of(inst.quad);
      CHECK(hull == inst.bbox);
      CHECK(inst.bbox.x0 >= 0.0);
      CHECK(inst.bbox.y0 >= 0.0);
      CHECK(inst.bbox.x1 <= 640.0);
      CHECK(inst.bbox.y1 <= 480.0);
    }
  }
}

TEST_CASE("synthesize_image is deterministic") {
  SynthesisConfig config;
  config.words_per_image = 3;
  const std::vector<std::string> words{"one", "two", "three"};
  Rng a(77), b(77);
  const auto ra = synthesize_image(gt::varied_background(3), words, library(), config, a);
  const auto rb = synthesize_image(gt::varied_background(3), words, library(), config, b);
  CHECK(ra.image == rb.image);
  REQUIRE(ra.instances.size() == rb.instances.size());
  for (std::size_t k = 0; k < ra.instances.size(); ++k) {
    CHECK(ra.instances[k].chosen_gray == rb.instances[k].chosen_gray);
    CHECK(ra.instances[k].placement == rb.instances[k].placement);
  }
}

TEST_CASE("later words see earlier words in their border sample") {
  // Small uniform canvas so words pile on top of each other.
  SynthesisConfig config = fixed_style(24);
  config.min_pixel_height = 18;
  config.words_per_image = 4;
  const std::vector<std::string> words{"ink", "on", "ink", "again"};
  int overlaps = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const auto r = synthesize_image(gt::uniform_image(90, 40, 128), words, library(), config, rng);
    for (std::size_t k = 0; k < r.instances.size(); ++k) {
      for (std::size_t j = 0; j < k; ++j) {
        const int earlier = r.instances[j].chosen_gray;
        if (earlier == 128 || r.instances[k].analysis.histogram[earlier] == 0) continue;
        ++overlaps;
        CHECK(std::abs(r.instances[k].chosen_gray - earlier) > config.thresholds.min_margin);
      }
    }
  }
  CHECK(overlaps > 20);
}

TEST_CASE("synthesize_image abandons on a full-spectrum background") {
  SynthesisConfig config = fixed_style(64);
  config.words_per_image = 3;
  const std::vector<std::string> words{"abandonment", "spectrum", "everywhere"};
  Rng rng(4);
  const auto r = synthesize_image(gt::cycling_image(640, 480), words, library(), config, rng);
  CHECK(r.instances.empty());
  REQUIRE(r.abandoned.size() == 3);
  for (const auto& a : r.abandoned) {
    CHECK(a.reason == "Abandoned");
    CHECK(a.retries_used == 20);
    CHECK(a.tried.size() == 20);
  }
}

TEST_CASE("synthesize_image records per-word failures without failing the image") {
  SynthesisConfig config = fixed_style(60);
  config.words_per_image = 3;
  const std::vector<std::string> words{"way too long to fit here", "a\xe4\xb8\xad", "ok"};
  Rng rng(8);
  const auto r = synthesize_image(gt::uniform_image(120, 90, 30), words, library(), config, rng);
  REQUIRE(r.abandoned.size() == 2);
  CHECK(r.abandoned[0].reason == "NoFit");
  CHECK(r.abandoned[1].reason == "MissingGlyph");
  REQUIRE(r.instances.size() == 1);
  CHECK(r.instances[0].word == "ok");
}

TEST_CASE("config validation") {
  CHECK_NOTHROW(SynthesisConfig{}.validate());
  SynthesisConfig c;
  CHECK(c.max_retries == 20);
  CHECK(c.thresholds.min_margin == 16);
  c.words_per_image = 0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = {};
  c.max_retries = -1;
  CHECK_THROWS_AS(c.validate(), Error);
  c = {};
  c.min_pixel_height = 40;
  c.max_pixel_height = 20;
  CHECK_THROWS_AS(c.validate(), Error);
  c = {};
  c.max_rotation_deg = NAN;
  CHECK_THROWS_AS(c.validate(), Error);
}
