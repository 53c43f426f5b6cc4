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

#include <sstream>

#include "graysynth/batch.hpp"
#include "graysynth/dataset.hpp"
#include "graysynth/error.hpp"
#include "graysynth/image_io.hpp"
#include "support/fixtures.hpp"

using namespace graysynth;
namespace gt = graysynth::testing;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> lines_of(const fs::path& file) {
  std::istringstream in(gt::read_text(file));
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

struct Fixture {
  gt::TempDir bg_dir{"ds-bg"};
  FontLibrary fonts = load_fonts(gt::fonts_dir());
  BackgroundPool backgrounds;
  WordCorpus corpus{std::vector<std::string>{"north", "south", "east", "west"}};
  SynthesisConfig config;

  Fixture() {
    gt::write_backgrounds(bg_dir.path(), 3);
    backgrounds = load_backgrounds(bg_dir.path());
    config.words_per_image = 2;
    config.seed = 42;
  }
  BatchInputs inputs() const { return {fonts, backgrounds, corpus, config}; }
};

}  // namespace

TEST_CASE("file naming") {
  CHECK(image_file_name(7) == "images/00000007.png");
  CHECK(image_file_name(12345678) == "images/12345678.png");
  CHECK(analysis_file_name(7, 1) == "analysis/00000007_1.csv");
}

TEST_CASE("writer produces one label line per image and 256-row analysis CSVs") {
  Fixture f;
  gt::TempDir out("ds-out");
  const auto dir = out / "nested/deeper";
  auto result = synthesize_indexed(f.inputs(), 0);
  REQUIRE(result.instances.size() == 2);
  {
    DatasetWriter writer(dir, true, f.backgrounds);
    const auto files = writer.write_sample(result);
    CHECK(fs::exists(files.image));
    REQUIRE(files.analysis.size() == 2);
    const auto csv = lines_of(files.analysis[0]);
    CHECK(csv.size() == 257);
    CHECK(csv[0] == "gray,count,is_candidate");
    CHECK(writer.counts().images == 1);
    CHECK(writer.counts().instances == 2);

    auto wrong = synthesize_indexed(f.inputs(), 5);
    CHECK_THROWS_AS(writer.append_label(wrong), Error);
  }
  CHECK(read_image(dir / "images/00000000.png") == result.image);
  const auto labels = lines_of(dir / "labels.jsonl");
  REQUIRE(labels.size() == 1);
  const auto j = nlohmann::json::parse(labels[0]);
  CHECK(j.at("instances").size() == 2);
  CHECK(j.at("image") == "images/00000000.png");
  CHECK(j.at("width") == 640);
  const auto& inst = j.at("instances")[0];
  for (const char* key : {"word", "font_id", "pixel_height", "rotation_deg", "placement", "quad", "bbox",
                          "chosen_gray", "candidate_count", "retries_used"}) {
    CHECK(inst.contains(key));
  }
  CHECK(inst.at("quad").size() == 4);
  CHECK(inst.at("bbox").size() == 4);
}

TEST_CASE("label records round-trip through JSON") {
  Fixture f;
  f.config.words_per_image = 3;
  for (std::uint64_t i = 0; i < 5; ++i) {
    const auto rec = make_record(synthesize_indexed(f.inputs(), i), f.backgrounds);
    const auto j = to_json(rec);
    CHECK(to_json(record_from_json(j)) == j);
    CHECK(to_json(record_from_json(nlohmann::json::parse(j.dump()))) == j);
  }
  auto j = to_json(make_record(synthesize_indexed(f.inputs(), 0), f.backgrounds));
  j.erase("width");
  CHECK_THROWS_AS(record_from_json(j), Error);
  j = to_json(make_record(synthesize_indexed(f.inputs(), 0), f.backgrounds));
  j["instances"][0]["chosen_gray"] = "dark";
  try {
    record_from_json(j);
    FAIL("expected CorruptDataset");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CorruptDataset);
  }
}

TEST_CASE("manifest") {
  gt::TempDir out("manifest");
  DatasetManifest m;
  m.created_at = utc_timestamp();
  m.config.seed = 42;
  m.config.thresholds.vertical_fraction = 0.125;
  m.assets.fonts_digest = "abc";
  m.counts = {10, 17, 3};
  const auto path = write_manifest(m, out / "a/b");
  CHECK(path == out / "a/b/meta.json");
  const auto j = nlohmann::json::parse(gt::read_text(path));
  CHECK(j.at("config").at("seed") == 42);
  CHECK(j.at("config").at("min_margin") == 16);
  CHECK(j.at("config").at("max_retries") == 20);
  CHECK(j.contains("design"));
  const auto back = manifest_from_json(j);
  CHECK(back.config.seed == 42);
  CHECK(back.config.thresholds.vertical_fraction == 0.125);
  CHECK(back.counts.instances == 17);
  CHECK(to_json(back) == j);

  DatasetManifest again = m;
  again.created_at = "2000-01-01T00:00:00Z";
  auto a = to_json(m), b = to_json(again);
  CHECK(a != b);
  a.erase("created_at");
  b.erase("created_at");
  CHECK(a == b);
}
