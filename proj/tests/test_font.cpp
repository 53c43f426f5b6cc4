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
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "graysynth/error.hpp"
#include "graysynth/font.hpp"
#include "support/fixtures.hpp"

using namespace graysynth;
namespace gt = graysynth::testing;

namespace {

const FontFace& sans() {
  static const FontFace face = FontFace::from_file(gt::font_path());
  return face;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::Io;
}

std::string to_ascii(const GlyphMask& m) {
  std::ostringstream s;
  s << m.width << " " << m.height << "\n";
  for (int y = 0; y < m.height; ++y) {
    for (int x = 0; x < m.width; ++x) s << (m.at(x, y) ? '#' : '.');
    s << "\n";
  }
  return s.str();
}

bool tight(const GlyphMask& m) {
  bool top = false, bottom = false, left = false, right = false;
  for (int x = 0; x < m.width; ++x) top |= m.at(x, 0), bottom |= m.at(x, m.height - 1);
  for (int y = 0; y < m.height; ++y) left |= m.at(0, y), right |= m.at(m.width - 1, y);
  return top && bottom && left && right;
}

}  // namespace

TEST_CASE("decode_utf8") {
  CHECK(decode_utf8("abc") == U"abc");
  CHECK(decode_utf8("caf\xc3\xa9") == U"café");
  CHECK(decode_utf8("\xe2\x82\xac") == U"€");
  CHECK(decode_utf8("\xf0\x9f\x98\x80") == U"\U0001F600");
  CHECK_THROWS_AS(decode_utf8("\xc3"), Error);
  CHECK_THROWS_AS(decode_utf8("\xc0\xaf"), Error);       // overlong
  CHECK_THROWS_AS(decode_utf8("\xed\xa0\x80"), Error);   // surrogate
  CHECK_THROWS_AS(decode_utf8("\x80"), Error);
}

TEST_CASE("font loading") {
  CHECK(sans().family_name() == "DejaVu Sans");
  CHECK(sans().has_codepoint(U'A'));
  CHECK_FALSE(sans().has_codepoint(U'中'));
  CHECK(kind_of([] { FontFace::from_file("/nonexistent/font.ttf"); }) == ErrorKind::Io);
  CHECK(kind_of([] { FontFace::from_bytes({1, 2, 3}); }) == ErrorKind::InvalidFont);
  std::vector<std::uint8_t> junk(4096, 0x41);
  CHECK(kind_of([&] { FontFace::from_bytes(junk); }) == ErrorKind::InvalidFont);
}

TEST_CASE("rasterize errors") {
  CHECK(kind_of([] { rasterize(sans(), "   ", {}); }) == ErrorKind::ZeroArea);
  CHECK(kind_of([] { rasterize(sans(), "", {}); }) == ErrorKind::ZeroArea);
  CHECK(kind_of([] { rasterize(sans(), "a中", {}); }) == ErrorKind::MissingGlyph);
  CHECK(kind_of([] { rasterize(sans(), "a", {0, 0, 0.0}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("rasterize produces tight masks and consistent coverage") {
  for (const char* word : {"hello", "Wy", "i", "quick", "caf\xc3\xa9"}) {
    for (double rot : {0.0, 7.5, -13.0, 90.0}) {
      const auto r = rasterize(sans(), word, {0, 32, rot});
      CAPTURE(word);
      CAPTURE(rot);
      REQUIRE(r.mask.width > 0);
      REQUIRE(r.mask.height > 0);
      CHECK(tight(r.mask));
      REQUIRE(r.coverage.size() == r.mask.bits.size());
      for (std::size_t k = 0; k < r.coverage.size(); ++k) {
        REQUIRE(static_cast<bool>(r.mask.bits[k]) == (r.coverage[k] >= 128));
      }
    }
  }
}

TEST_CASE("rotation is periodic") {
  for (const char* word : {"hello", "Rotate", "xyz"}) {
    for (double base : {0.0, 12.0, -9.5}) {
      const auto a = rasterize(sans(), word, {0, 28, base});
      const auto b = rasterize(sans(), word, {0, 28, base + 360.0});
      const auto c = rasterize(sans(), word, {0, 28, base - 720.0});
      CHECK(a.mask == b.mask);
      CHECK(a.mask == c.mask);
    }
  }
}

TEST_CASE("unrotated quad is the ink box") {
  const auto r = rasterize(sans(), "hello", {0, 32, 0.0});
  const double w = r.mask.width, h = r.mask.height;
  CHECK(r.quad[0] == Point{0, 0});
  CHECK(r.quad[1] == Point{w, 0});
  CHECK(r.quad[2] == Point{w, h});
  CHECK(r.quad[3] == Point{0, h});
}

TEST_CASE("rotated quad is the upright ink box turned by the style angle") {
  const auto upright = rasterize(sans(), "rotation", {0, 40, 0.0});
  const auto r = rasterize(sans(), "rotation", {0, 40, 14.0});
  auto dist = [](Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); };
  CHECK(dist(r.quad[0], r.quad[1]) == doctest::Approx(upright.mask.width).epsilon(1e-9));
  CHECK(dist(r.quad[1], r.quad[2]) == doctest::Approx(upright.mask.height).epsilon(1e-9));
  CHECK(dist(r.quad[0], r.quad[2]) == doctest::Approx(dist(r.quad[1], r.quad[3])).epsilon(1e-9));
  // Counterclockwise on screen: the top edge rises to the right.
  CHECK(r.quad[1].y < r.quad[0].y);
  // Every ink pixel centre lies inside the quad, up to resampling slack.
  auto inside = [&](double px, double py) {
    for (int i = 0; i < 4; ++i) {
      const Point a = r.quad[i], b = r.quad[(i + 1) % 4];
      const double cross = (b.x - a.x) * (py - a.y) - (b.y - a.y) * (px - a.x);
      if (cross / dist(a, b) < -1.0) return false;
    }
    return true;
  };
  for (int y = 0; y < r.mask.height; ++y)
    for (int x = 0; x < r.mask.width; ++x)
      if (r.mask.at(x, y)) REQUIRE(inside(x + 0.5, y + 0.5));
}

TEST_CASE("larger heights give larger masks") {
  const auto small = rasterize(sans(), "hello", {0, 16, 0.0});
  const auto big = rasterize(sans(), "hello", {0, 64, 0.0});
  CHECK(big.mask.width > small.mask.width * 3);
  CHECK(big.mask.height > small.mask.height * 3);
}

TEST_CASE("concurrent rasterization is deterministic") {
  const auto expected = rasterize(sans(), "parallel", {0, 30, 5.0}).mask;
  std::vector<std::thread> threads;
  std::vector<int> ok(8, 0);
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      bool same = true;
      for (int i = 0; i < 20; ++i) same &= rasterize(sans(), "parallel", {0, 30, 5.0}).mask == expected;
      ok[t] = same;
    });
  }
  for (auto& th : threads) th.join();
  for (int v : ok) CHECK(v == 1);
}

TEST_CASE("golden raster: hello at height 32") {
  const auto golden = gt::data_dir() / "golden" / "hello_dejavusans_32.txt";
  const std::string actual = to_ascii(rasterize(sans(), "hello", {0, 32, 0.0}).mask);
  if (std::getenv("GRAYSYNTH_UPDATE_GOLDEN") != nullptr) gt::write_text(golden, actual);
  CHECK(gt::read_text(golden) == actual);
}
