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

#include <set>

#include "graysynth/rng.hpp"

using namespace graysynth;

TEST_CASE("same seed, same stream") {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    differs |= x != c.next();
  }
  CHECK(differs);
}

TEST_CASE("per-image streams are independent of order") {
  auto first = Rng::for_image(9, 5).next();
  for (int i = 0; i < 10; ++i) (void)Rng::for_image(9, static_cast<std::uint64_t>(i)).next();
  CHECK(Rng::for_image(9, 5).next() == first);
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(Rng::for_image(9, i).next());
  CHECK(seen.size() == 1000);
  CHECK(Rng::for_image(9, 0).next() != Rng::for_image(10, 0).next());
}

TEST_CASE("below and between stay in range") {
  Rng r(1);
  for (std::uint64_t n : {1ull, 2ull, 3ull, 7ull, 256ull, 1000003ull}) {
    for (int i = 0; i < 2000; ++i) REQUIRE(r.below(n) < n);
  }
  bool lo = false, hi = false;
  for (int i = 0; i < 5000; ++i) {
    const auto v = r.between(-3, 3);
    REQUIRE(v >= -3);
    REQUIRE(v <= 3);
    lo |= v == -3;
    hi |= v == 3;
  }
  CHECK(lo);
  CHECK(hi);
  CHECK(r.between(5, 5) == 5);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.unit();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double d = r.between_real(-15.0, 15.0);
    REQUIRE(d >= -15.0);
    REQUIRE(d <= 15.0);
  }
}

TEST_CASE("mix64 is a bijection on a sample") {
  std::set<std::uint64_t> out;
  for (std::uint64_t i = 0; i < 10000; ++i) out.insert(mix64(i));
  CHECK(out.size() == 10000);
}
