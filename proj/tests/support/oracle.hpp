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

#include <cstdlib>

#include "graysynth/gray_analysis.hpp"

namespace graysynth::testing {

/// Brute force over every (candidate, used) pair: g qualifies when its own
/// bin is under the vertical threshold and it is more than min_margin away
/// from every level above it. Deliberately shares no code with the
/// run-based implementation it checks.
inline GrayLevelSet candidate_oracle(const GrayHistogram& hist, const AnalysisThresholds& t) {
  GrayHistogram::Count peak = 0;
  for (int g = 0; g < kGrayLevels; ++g) peak = hist[g] > peak ? hist[g] : peak;
  const long double limit = static_cast<long double>(peak) * static_cast<long double>(t.vertical_fraction);
  auto used = [&](int g) { return static_cast<long double>(hist[g]) > limit; };

  GrayLevelSet out;
  for (int g = 0; g < kGrayLevels; ++g) {
    if (used(g)) continue;
    bool ok = true;
    for (int u = 0; u < kGrayLevels && ok; ++u) {
      if (used(u) && std::abs(g - u) <= t.min_margin) ok = false;
    }
    if (ok) out.insert(g);
  }
  return out;
}

}  // namespace graysynth::testing
