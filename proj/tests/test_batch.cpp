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

#include "graysynth/batch.hpp"
#include "support/fixtures.hpp"

using namespace graysynth;
namespace gt = graysynth::testing;

namespace {

struct Fixture {
  gt::TempDir bg_dir{"batch-bg"};
  FontLibrary fonts = load_fonts(gt::fonts_dir());
  BackgroundPool backgrounds;
  WordCorpus corpus = load_corpus(gt::data_dir() / "words.txt");
  SynthesisConfig config;

  Fixture() {
    gt::write_backgrounds(bg_dir.path(), 4);
    backgrounds = load_backgrounds(bg_dir.path());
    config.words_per_image = 3;
    config.seed = 9;
  }
  BatchInputs inputs() const { return {fonts, backgrounds, corpus, config}; }
};

void check_same(const std::vector<ImageResult>& a, const std::vector<ImageResult>& b) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CAPTURE(i);
    CHECK(a[i].index == b[i].index);
    CHECK(a[i].background_id == b[i].background_id);
    CHECK(a[i].image == b[i].image);
    REQUIRE(a[i].instances.size() == b[i].instances.size());
    for (std::size_t k = 0; k < a[i].instances.size(); ++k) {
      CHECK(a[i].instances[k].word == b[i].instances[k].word);
      CHECK(a[i].instances[k].chosen_gray == b[i].instances[k].chosen_gray);
      CHECK(a[i].instances[k].placement == b[i].instances[k].placement);
      CHECK(a[i].instances[k].quad == b[i].instances[k].quad);
    }
    CHECK(a[i].abandoned.size() == b[i].abandoned.size());
  }
}

}  // namespace

TEST_CASE("parallel batch equals the serial reference for any thread count") {
  Fixture f;
  const auto serial = synthesize_batch_serial(f.inputs(), 0, 24);
  for (int jobs : {1, 2, 3, 8}) {
    CAPTURE(jobs);
    check_same(serial, synthesize_batch(f.inputs(), 0, 24, jobs));
  }
}

TEST_CASE("an image does not depend on which batch it was made in") {
  Fixture f;
  const auto whole = synthesize_batch_serial(f.inputs(), 0, 12);
  const auto tail = synthesize_batch(f.inputs(), 6, 6, 4);
  check_same(std::vector<ImageResult>(whole.begin() + 6, whole.end()), tail);
  CHECK(synthesize_indexed(f.inputs(), 7).image == whole[7].image);
}

TEST_CASE("different seeds give different runs") {
  Fixture f;
  const auto a = synthesize_batch_serial(f.inputs(), 0, 4);
  f.config.seed = 10;
  const auto b = synthesize_batch_serial(f.inputs(), 0, 4);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) differs |= !(a[i].image == b[i].image);
  CHECK(differs);
}

TEST_CASE("streaming delivers every image in order") {
  Fixture f;
  const auto serial = synthesize_batch_serial(f.inputs(), 0, 17);
  for (std::size_t chunk : {1u, 4u, 64u}) {
    std::vector<ImageResult> got;
    std::vector<int> touched(17, 0);
    synthesize_streaming(
        f.inputs(), 17, 4, chunk, [&](ImageResult& r) { touched[r.index] += 1; },
        [&](ImageResult& r) { got.push_back(r); });
    check_same(serial, got);
    for (int t : touched) CHECK(t == 1);
  }
}
