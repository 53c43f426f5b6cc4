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

// Gray-level analysis of the pixels surrounding a word: which background
// grays are in use, and which text grays stay far enough away from them.

#include <array>
#include <bitset>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace graysynth {

inline constexpr int kGrayLevels = 256;

class GrayHistogram {
 public:
  using Count = std::uint64_t;

  GrayHistogram() { bins_.fill(0); }

  /// Throws Error(InvalidGrayLevel) for levels outside [0,255].
  void add(int gray, Count n = 1);
  void add_unchecked(std::uint8_t gray) noexcept { ++bins_[gray]; }

  Count operator[](int gray) const { return bins_.at(static_cast<std::size_t>(gray)); }
  const std::array<Count, kGrayLevels>& bins() const noexcept { return bins_; }

  Count total() const noexcept;
  Count max() const noexcept;

  friend bool operator==(const GrayHistogram&, const GrayHistogram&) = default;

 private:
  std::array<Count, kGrayLevels> bins_;
};

/// Strictly ascending set of gray levels in [0,255].
class GrayLevelSet {
 public:
  GrayLevelSet() = default;

  /// Levels must be strictly ascending and within [0,255].
  explicit GrayLevelSet(std::span<const int> ascending);
  GrayLevelSet(std::initializer_list<int> ascending)
      : GrayLevelSet(std::span<const int>(ascending.begin(), ascending.size())) {}

  /// Inclusive range [lo, hi]; empty when lo > hi.
  static GrayLevelSet range(int lo, int hi);
  static GrayLevelSet all() { return range(0, kGrayLevels - 1); }

  bool contains(int gray) const noexcept {
    return gray >= 0 && gray < kGrayLevels && bits_.test(static_cast<std::size_t>(gray));
  }
  std::size_t size() const noexcept { return bits_.count(); }
  bool empty() const noexcept { return bits_.none(); }

  /// The k-th smallest member, 0-based. Requires k < size().
  int nth(std::size_t k) const;
  std::vector<int> levels() const;

  void insert(int gray);
  void erase(int gray) noexcept;

  GrayLevelSet operator|(const GrayLevelSet& other) const;
  GrayLevelSet operator-(const GrayLevelSet& other) const;
  bool is_subset_of(const GrayLevelSet& other) const noexcept {
    return (bits_ & ~other.bits_).none();
  }

  friend bool operator==(const GrayLevelSet&, const GrayLevelSet&) = default;

 private:
  std::bitset<kGrayLevels> bits_;
};

struct AnalysisThresholds {
  /// Fraction of the histogram's largest bin at or below which a gray level
  /// counts as unused.
  double vertical_fraction = 0.0;
  /// Minimum distance, in gray levels, between a text gray and any used
  /// background gray.
  int min_margin = 16;

  /// Throws Error(InvalidArgument) when a field is out of range.
  void validate() const;
};

GrayHistogram histogram_from_samples(std::span<const int> samples);

/// True when `count <= max_count * fraction` in exact real arithmetic.
bool within_vertical_threshold(GrayHistogram::Count count, GrayHistogram::Count max_count,
                               double fraction) noexcept;

/// Levels whose count is at most max(bins) * vertical_fraction.
GrayLevelSet unused_grays(const GrayHistogram& hist, double vertical_fraction);

/// Used levels adjacent to at least one unused level.
GrayLevelSet edge_colors(const GrayLevelSet& unused);

/// Unused levels farther than min_margin from every edge color.
GrayLevelSet design_colors(const GrayHistogram& hist, const AnalysisThresholds& thresholds);

}  // namespace graysynth
