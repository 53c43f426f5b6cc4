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

#include <random>

#include "graysynth/error.hpp"
#include "graysynth/morphology.hpp"

using namespace graysynth;

namespace {

GlyphMask block(int w, int h) {
  GlyphMask m(w, h);
  std::fill(m.bits.begin(), m.bits.end(), 1);
  return m;
}

GlyphMask random_mask(std::mt19937_64& gen) {
  std::uniform_int_distribution<int> side(1, 40);
  std::uniform_real_distribution<double> density(0.0, 0.6);
  GlyphMask m(side(gen), side(gen));
  std::bernoulli_distribution on(density(gen));
  for (auto& b : m.bits) b = on(gen) ? 1 : 0;
  return m;
}

/// `m` drawn onto a canvas grown by `pad` on every side.
GlyphMask padded(const GlyphMask& m, int pad) {
  GlyphMask out(m.width + 2 * pad, m.height + 2 * pad);
  for (int y = 0; y < m.height; ++y)
    for (int x = 0; x < m.width; ++x)
      if (m.at(x, y)) out.set(x + pad, y + pad);
  return out;
}

bool subset(const BinaryRaster& a, const BinaryRaster& b) {
  REQUIRE(a.width == b.width);
  REQUIRE(a.height == b.height);
  for (std::size_t i = 0; i < a.bits.size(); ++i)
    if (a.bits[i] && !b.bits[i]) return false;
  return true;
}

}  // namespace

TEST_CASE("dilate: documented cases") {
  const auto empty = dilate(GlyphMask(3, 2), 2);
  CHECK(empty.width == 7);
  CHECK(empty.height == 6);
  CHECK(empty.none());

  const auto dot = dilate(block(1, 1), 2);
  CHECK(dot == block(5, 5));
  CHECK(dilate(block(5, 5), 2) == block(9, 9));
  CHECK(dilate(block(4, 3), 0) == block(4, 3));
  CHECK_THROWS_AS(dilate(block(1, 1), -1), Error);
}

TEST_CASE("border_of: documented cases") {
  const auto e = border_of(GlyphMask(4, 4));
  CHECK(e.width == 8);
  CHECK(e.none());

  const auto ring1 = border_of(block(1, 1));
  CHECK(ring1.count() == 24);
  CHECK_FALSE(ring1.at(2, 2));
  CHECK(border_of(block(5, 5)).count() == 56);
}

TEST_CASE("dilate matches the naive reference") {
  std::mt19937_64 gen(11);
  for (int i = 0; i < 500; ++i) {
    const auto m = random_mask(gen);
    for (int r : {0, 1, 2, 3, 5}) REQUIRE(dilate(m, r) == reference::dilate(m, r));
  }
}

TEST_CASE("morphology invariants over random masks") {
  std::mt19937_64 gen(12345);
  for (int i = 0; i < 1000; ++i) {
    const auto m = random_mask(gen);
    const auto grown = dilate(m, kBorderRadius);
    const auto border = border_of(m);
    const auto aligned = padded(m, kBorderRadius);

    REQUIRE(border.width == grown.width);
    REQUIRE(border.height == grown.height);
    for (std::size_t k = 0; k < border.bits.size(); ++k) {
      REQUIRE_FALSE((border.bits[k] && aligned.bits[k]));
      REQUIRE((border.bits[k] || aligned.bits[k]) == static_cast<bool>(grown.bits[k]));
    }
    REQUIRE(grown.count() >= m.count());
    REQUIRE(dilate(dilate(m, 1), 1) == grown);

    // Monotonicity: adding pixels never removes dilated pixels.
    GlyphMask bigger = m;
    std::bernoulli_distribution add(0.2);
    for (auto& b : bigger.bits) b = (b || add(gen)) ? 1 : 0;
    REQUIRE(subset(m, bigger));
    REQUIRE(subset(dilate(m, 2), dilate(bigger, 2)));
  }
}
