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

#include <cstdlib>
#include <random>

#include "graysynth/gray_analysis.hpp"
#include "support/oracle.hpp"

using namespace graysynth;
using graysynth::testing::candidate_oracle;

namespace {

constexpr int kMargins[] = {0, 8, 16, 24};

GrayHistogram random_histogram(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> density(0.01, 1.0);
  std::uniform_int_distribution<int> count(1, 5000);
  std::bernoulli_distribution used(density(gen));
  GrayHistogram h;
  for (int g = 0; g < kGrayLevels; ++g) {
    if (used(gen)) h.add(g, static_cast<GrayHistogram::Count>(count(gen)));
  }
  return h;
}

}  // namespace

TEST_CASE("design_colors matches the oracle on every single-level histogram") {
  for (int u = 0; u < kGrayLevels; ++u) {
    GrayHistogram h;
    h.add(u, 7);
    for (int m : kMargins) {
      CAPTURE(u);
      CAPTURE(m);
      REQUIRE(design_colors(h, {0.0, m}) == candidate_oracle(h, {0.0, m}));
    }
  }
}

TEST_CASE("design_colors matches the oracle on random histograms") {
  std::mt19937_64 gen(20260419);
  for (int i = 0; i < 10000; ++i) {
    const auto h = random_histogram(gen);
    for (int m : kMargins) {
      CAPTURE(i);
      CAPTURE(m);
      REQUIRE(design_colors(h, {0.0, m}) == candidate_oracle(h, {0.0, m}));
    }
  }
}

TEST_CASE("design_colors matches the oracle with nonzero vertical fractions") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> fraction(0.0, 1.0);
  std::uniform_int_distribution<int> margin(0, 60);
  for (int i = 0; i < 3000; ++i) {
    const auto h = random_histogram(gen);
    const AnalysisThresholds t{fraction(gen), margin(gen)};
    REQUIRE(design_colors(h, t) == candidate_oracle(h, t));
  }
}

TEST_CASE("analysis properties") {
  std::mt19937_64 gen(99);
  std::uniform_int_distribution<int> margin(0, 40);
  for (int i = 0; i < 2000; ++i) {
    const auto h = random_histogram(gen);
    const int m = margin(gen);
    const auto unused = unused_grays(h, 0.0);
    const auto colors = design_colors(h, {0.0, m});

    CHECK(colors.is_subset_of(unused));
    const auto edges = edge_colors(unused);
    CHECK((edges - unused) == edges);
    CHECK(design_colors(h, {0.0, m + 1}).is_subset_of(colors));

    for (int g : colors.levels()) {
      for (int u = 0; u < kGrayLevels; ++u) {
        if (h[u] > 0) REQUIRE(std::abs(g - u) > m);
      }
    }
  }
}

TEST_CASE("histogram total is conserved") {
  std::mt19937_64 gen(3);
  std::uniform_int_distribution<int> level(0, 255);
  std::uniform_int_distribution<int> length(0, 4000);
  for (int i = 0; i < 200; ++i) {
    std::vector<int> samples(static_cast<std::size_t>(length(gen)));
    for (auto& s : samples) s = level(gen);
    CHECK(histogram_from_samples(samples).total() == samples.size());
  }
}
