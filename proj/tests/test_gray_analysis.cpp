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

#include <vector>

#include "graysynth/error.hpp"
#include "graysynth/gray_analysis.hpp"
#include "support/oracle.hpp"

using namespace graysynth;
using graysynth::testing::candidate_oracle;

namespace {

GrayHistogram used_at(std::initializer_list<int> levels, GrayHistogram::Count n = 1) {
  GrayHistogram h;
  for (int g : levels) h.add(g, n);
  return h;
}

GrayLevelSet ranges(std::initializer_list<std::pair<int, int>> spans) {
  GrayLevelSet s;
  for (auto [lo, hi] : spans) s = s | GrayLevelSet::range(lo, hi);
  return s;
}

GrayHistogram everything_used() {
  GrayHistogram h;
  for (int g = 0; g < kGrayLevels; ++g) h.add(g);
  return h;
}

}  // namespace

TEST_CASE("histogram_from_samples") {
  CHECK(histogram_from_samples({}).total() == 0);
  const std::vector<int> s{5, 5, 7};
  const auto h = histogram_from_samples(s);
  CHECK(h[5] == 2);
  CHECK(h[7] == 1);
  CHECK(h.total() == 3);
  const std::vector<int> bad{3, 256};
  CHECK_THROWS_AS(histogram_from_samples(bad), Error);
  const std::vector<int> negative{-1};
  try {
    histogram_from_samples(negative);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidGrayLevel);
  }
}

TEST_CASE("GrayLevelSet basics") {
  CHECK_THROWS_AS(GrayLevelSet({3, 2}), Error);
  CHECK_THROWS_AS(GrayLevelSet({1, 1}), Error);
  CHECK_THROWS_AS(GrayLevelSet({256}), Error);
  const GrayLevelSet s{2, 9, 40};
  CHECK(s.size() == 3);
  CHECK(s.nth(0) == 2);
  CHECK(s.nth(2) == 40);
  CHECK_THROWS(s.nth(3));
  CHECK(s.levels() == std::vector<int>{2, 9, 40});
  CHECK(GrayLevelSet::all().size() == 256);
  CHECK((GrayLevelSet::all() - s).size() == 253);
  CHECK(s.is_subset_of(GrayLevelSet::range(0, 40)));
  CHECK_FALSE(s.is_subset_of(GrayLevelSet::range(3, 40)));
}

TEST_CASE("unused_grays") {
  CHECK(unused_grays(GrayHistogram{}, 0.0) == GrayLevelSet::all());
  CHECK(unused_grays(everything_used(), 0.0).empty());

  GrayHistogram h;
  h.add(100, 5);
  h.add(200, 3);
  auto expected = GrayLevelSet::all();
  expected.erase(100);
  expected.erase(200);
  CHECK(unused_grays(h, 0.0) == expected);
}

TEST_CASE("unused_grays compares the vertical threshold exactly") {
  GrayHistogram h;
  h.add(10, 10);
  h.add(20, 2);
  h.add(30, 3);
  h.add(40, 5);
  // The double nearest 0.3 is slightly below it, so 10 * 0.3 is just under 3
  // when evaluated exactly (a rounded double product would give 3 + ulp).
  auto u = unused_grays(h, 0.3);
  CHECK(u.contains(20));
  CHECK_FALSE(u.contains(30));
  CHECK_FALSE(u.contains(10));
  u = unused_grays(h, 0.5);
  CHECK(u.contains(40));
  // Fraction 1 marks everything, including the peak, as unused.
  CHECK(unused_grays(h, 1.0) == GrayLevelSet::all());

  CHECK(within_vertical_threshold(2, 10, 0.3));
  CHECK_FALSE(within_vertical_threshold(3, 10, 0.3));
  CHECK(within_vertical_threshold(3, 12, 0.25));
  CHECK(within_vertical_threshold(0, 0, 0.0));
  const GrayHistogram::Count big = (GrayHistogram::Count{1} << 60) + 1;
  CHECK_FALSE(within_vertical_threshold(big, big, 0.9999999999999999));
  CHECK(within_vertical_threshold(big - 1, big, 1.0));
}

TEST_CASE("edge_colors") {
  CHECK(edge_colors(GrayLevelSet::all()).empty());
  CHECK(edge_colors(GrayLevelSet{}).empty());
  auto u = GrayLevelSet::all();
  u.erase(100);
  CHECK(edge_colors(u) == GrayLevelSet{100});
  u.erase(101);
  u.erase(102);
  CHECK(edge_colors(u) == GrayLevelSet({100, 102}));
  // Used levels at the ends of the range.
  CHECK(edge_colors(GrayLevelSet::range(1, 254)) == GrayLevelSet({0, 255}));
  CHECK(edge_colors(GrayLevelSet::range(0, 10)) == GrayLevelSet{11});
}

TEST_CASE("design_colors: documented cases") {
  AnalysisThresholds t;
  CHECK(t.min_margin == 16);
  CHECK(t.vertical_fraction == 0.0);

  CHECK(design_colors(used_at({100}), t) == ranges({{0, 83}, {117, 255}}));
  CHECK(design_colors(used_at({100, 101, 102}), t) == ranges({{0, 83}, {119, 255}}));
  CHECK(design_colors(used_at({0}), t) == GrayLevelSet::range(17, 255));
  CHECK(design_colors(used_at({255}), t) == GrayLevelSet::range(0, 238));
  CHECK(design_colors(everything_used(), t).empty());
  CHECK(design_colors(used_at({100, 120}), t) == ranges({{0, 83}, {137, 255}}));
  CHECK(design_colors(GrayHistogram{}, t) == GrayLevelSet::all());
  CHECK(design_colors(used_at({128}, 900), t) == ranges({{0, 111}, {145, 255}}));
}

TEST_CASE("design_colors with margin <= 0 is the unused set") {
  const auto h = used_at({3, 50, 51, 199});
  for (int m : {0, -1, -40}) {
    CHECK(design_colors(h, {0.0, m}) == unused_grays(h, 0.0));
  }
}

TEST_CASE("oracle agrees on the documented cases") {
  AnalysisThresholds t;
  CHECK(candidate_oracle(used_at({100, 120}), t) == ranges({{0, 83}, {137, 255}}));
  CHECK(candidate_oracle(GrayHistogram{}, t) == GrayLevelSet::all());
  CHECK(candidate_oracle(used_at({100, 101, 102}), t) == ranges({{0, 83}, {119, 255}}));
}

TEST_CASE("thresholds validation") {
  CHECK_NOTHROW(AnalysisThresholds{}.validate());
  CHECK_THROWS_AS((AnalysisThresholds{-0.1, 16}.validate()), Error);
  CHECK_THROWS_AS((AnalysisThresholds{1.5, 16}.validate()), Error);
}
