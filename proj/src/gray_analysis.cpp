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

#include "graysynth/gray_analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "graysynth/error.hpp"

namespace graysynth {

namespace {

void check_level(int gray) {
  if (gray < 0 || gray >= kGrayLevels) {
    throw Error(ErrorKind::InvalidGrayLevel, "gray level " + std::to_string(gray) + " outside [0,255]");
  }
}

}  // namespace

void GrayHistogram::add(int gray, Count n) {
  check_level(gray);
  bins_[static_cast<std::size_t>(gray)] += n;
}

GrayHistogram::Count GrayHistogram::total() const noexcept {
  return std::accumulate(bins_.begin(), bins_.end(), Count{0});
}

GrayHistogram::Count GrayHistogram::max() const noexcept {
  return *std::max_element(bins_.begin(), bins_.end());
}

GrayLevelSet::GrayLevelSet(std::span<const int> ascending) {
  int previous = -1;
  for (int g : ascending) {
    check_level(g);
    if (g <= previous) {
      throw Error(ErrorKind::InvalidArgument, "gray levels must be strictly ascending");
    }
    bits_.set(static_cast<std::size_t>(g));
    previous = g;
  }
}

GrayLevelSet GrayLevelSet::range(int lo, int hi) {
  GrayLevelSet out;
  for (int g = std::max(lo, 0); g <= std::min(hi, kGrayLevels - 1); ++g) {
    out.bits_.set(static_cast<std::size_t>(g));
  }
  return out;
}

int GrayLevelSet::nth(std::size_t k) const {
  for (int g = 0; g < kGrayLevels; ++g) {
    if (bits_.test(static_cast<std::size_t>(g)) && k-- == 0) return g;
  }
  throw Error(ErrorKind::InvalidArgument, "index past the end of the gray level set");
}

std::vector<int> GrayLevelSet::levels() const {
  std::vector<int> out;
  out.reserve(size());
  for (int g = 0; g < kGrayLevels; ++g) {
    if (bits_.test(static_cast<std::size_t>(g))) out.push_back(g);
  }
  return out;
}

void GrayLevelSet::insert(int gray) {
  check_level(gray);
  bits_.set(static_cast<std::size_t>(gray));
}

void GrayLevelSet::erase(int gray) noexcept {
  if (gray >= 0 && gray < kGrayLevels) bits_.reset(static_cast<std::size_t>(gray));
}

GrayLevelSet GrayLevelSet::operator|(const GrayLevelSet& other) const {
  GrayLevelSet out;
  out.bits_ = bits_ | other.bits_;
  return out;
}

GrayLevelSet GrayLevelSet::operator-(const GrayLevelSet& other) const {
  GrayLevelSet out;
  out.bits_ = bits_ & ~other.bits_;
  return out;
}

void AnalysisThresholds::validate() const {
  if (!(vertical_fraction >= 0.0 && vertical_fraction <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "vertical threshold must lie in [0,1]");
  }
  if (min_margin < 0 || min_margin > 255) {
    throw Error(ErrorKind::InvalidArgument, "min margin must lie in [0,255]");
  }
}

GrayHistogram histogram_from_samples(std::span<const int> samples) {
  GrayHistogram hist;
  for (int s : samples) hist.add(s);
  return hist;
}

bool within_vertical_threshold(GrayHistogram::Count count, GrayHistogram::Count max_count,
                               double fraction) noexcept {
  if (count == 0) return true;
  if (!(fraction > 0.0) || max_count == 0) return false;
  if (fraction >= 1.0) {
    if (count <= max_count) return true;
    if (fraction == 1.0) return false;
  }

  // fraction == mantissa * 2^-shift exactly, with a 53-bit integer mantissa.
  // Compare count * 2^shift <= max_count * mantissa in 128-bit integers.
  int exponent = 0;
  const double normalized = std::frexp(fraction, &exponent);
  const auto mantissa = static_cast<std::uint64_t>(std::ldexp(normalized, 53));
  const int shift = 53 - exponent;
  const unsigned __int128 rhs = static_cast<unsigned __int128>(max_count) * mantissa;
  if (shift <= 0) {
    // Only reachable for fractions >= 2^53; rhs << -shift exceeds any count.
    return true;
  }
  const int count_bits = std::bit_width(count);
  if (count_bits - 1 + shift >= 117) return false;  // lhs >= 2^117 > rhs
  const unsigned __int128 lhs = static_cast<unsigned __int128>(count) << shift;
  return lhs <= rhs;
}

GrayLevelSet unused_grays(const GrayHistogram& hist, double vertical_fraction) {
  const auto max_count = hist.max();
  GrayLevelSet out;
  for (int g = 0; g < kGrayLevels; ++g) {
    if (within_vertical_threshold(hist[g], max_count, vertical_fraction)) out.insert(g);
  }
  return out;
}

GrayLevelSet edge_colors(const GrayLevelSet& unused) {
  // Walk maximal runs of unused levels; the used neighbours on either side
  // of a run are its edge colors. A single used level between two runs is
  // the right edge of one and the left edge of the next, reported once.
  GrayLevelSet edges;
  int last_right = -1;
  int g = 0;
  while (g < kGrayLevels) {
    if (!unused.contains(g)) {
      ++g;
      continue;
    }
    const int run_start = g;
    while (g < kGrayLevels && unused.contains(g)) ++g;
    const int run_end = g - 1;
    if (run_start > 0 && run_start - 1 != last_right) edges.insert(run_start - 1);
    if (run_end < kGrayLevels - 1) {
      last_right = run_end + 1;
      edges.insert(last_right);
    }
  }
  return edges;
}

GrayLevelSet design_colors(const GrayHistogram& hist, const AnalysisThresholds& thresholds) {
  GrayLevelSet unused = unused_grays(hist, thresholds.vertical_fraction);
  if (thresholds.min_margin <= 0) return unused;

  std::array<bool, kGrayLevels> valid{};
  for (int g = 0; g < kGrayLevels; ++g) valid[g] = unused.contains(g);

  for (int c : edge_colors(unused).levels()) {
    const int lo = std::max(0, c - thresholds.min_margin);
    const int hi = std::min(kGrayLevels, c + thresholds.min_margin + 1);  // exclusive
    std::fill(valid.begin() + lo, valid.begin() + hi, false);
  }

  GrayLevelSet colors;
  for (int g = 0; g < kGrayLevels; ++g) {
    if (valid[g]) colors.insert(g);
  }
  return colors;
}

}  // namespace graysynth
