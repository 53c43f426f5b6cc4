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

#include "graysynth/cli.hpp"
#include "graysynth/dataset.hpp"
#include "graysynth/image_io.hpp"
#include "graysynth/validate.hpp"
#include "support/fixtures.hpp"

using namespace graysynth;
namespace gt = graysynth::testing;
namespace fs = std::filesystem;

namespace {

struct Dataset {
  gt::TempDir root{"validate"};
  fs::path dir = root / "out";

  explicit Dataset(const std::vector<std::string>& extra = {}) {
    gt::write_backgrounds(root / "bg", 4);
    std::vector<std::string> args{"generate",
                                  "--backgrounds", (root / "bg").string(),
                                  "--fonts", gt::fonts_dir().string(),
                                  "--corpus", (gt::data_dir() / "words.txt").string(),
                                  "--out", dir.string(),
                                  "--count", "12",
                                  "--words-per-image", "3",
                                  "--seed", "5"};
    args.insert(args.end(), extra.begin(), extra.end());
    std::ostringstream out, err;
    REQUIRE(cli::run(args, out, err) == 0);
  }

  std::vector<nlohmann::json> labels() const {
    std::istringstream in(gt::read_text(dir / "labels.jsonl"));
    std::vector<nlohmann::json> out;
    for (std::string line; std::getline(in, line);) out.push_back(nlohmann::json::parse(line));
    return out;
  }

  void save(const std::vector<nlohmann::json>& lines) const {
    std::string text;
    for (const auto& j : lines) text += j.dump() + "\n";
    gt::write_text(dir / "labels.jsonl", text);
  }
};

}  // namespace

TEST_CASE("contrast helpers") {
  GrayHistogram h;
  h.add(100, 4);
  CHECK(satisfies_contrast(83, h, {}));
  CHECK_FALSE(satisfies_contrast(84, h, {}));
  CHECK(satisfies_contrast(117, h, {}));
  CHECK_FALSE(satisfies_contrast(116, h, {}));
  CHECK(used_grays(h, 0.0) == GrayLevelSet{100});
}

TEST_CASE("a fresh dataset validates") {
  Dataset ds;
  const auto report = validate_dataset(ds.dir);
  CHECK(report.ok());
  CHECK(report.images_checked == 12);
  CHECK(report.instances_checked > 0);
}

TEST_CASE("a fresh alpha-blended dataset validates") {
  Dataset ds({"--alpha-blend"});
  CHECK(validate_dataset(ds.dir).ok());
}

TEST_CASE("a hand-edited chosen gray is a contrast violation naming the instance") {
  Dataset ds({"--emit-analysis"});
  auto lines = ds.labels();
  std::size_t target = lines.size();
  for (std::size_t i = 0; i < lines.size() && target == lines.size(); ++i) {
    if (!lines[i]["instances"].empty()) target = i;
  }
  REQUIRE(target < lines.size());

  // First gray with a nonzero count in the word's border histogram.
  std::istringstream csv(gt::read_text(ds.dir / analysis_file_name(target, 0)));
  std::string row;
  std::getline(csv, row);
  int border_gray = -1;
  while (border_gray < 0 && std::getline(csv, row)) {
    int g = 0;
    unsigned long long count = 0;
    char comma = 0;
    std::istringstream(row) >> g >> comma >> count;
    if (count > 0) border_gray = g;
  }
  REQUIRE(border_gray >= 0);
  lines[target]["instances"][0]["chosen_gray"] = border_gray;
  ds.save(lines);

  const auto report = validate_dataset(ds.dir);
  REQUIRE_FALSE(report.ok());
  CHECK(report.issue->kind == IssueKind::ContrastViolation);
  CHECK(report.issue->location.find("labels.jsonl:" + std::to_string(target + 1)) != std::string::npos);
  CHECK(report.issue->location.find("instance 0") != std::string::npos);

  std::ostringstream out, err;
  CHECK(cli::run({"validate", "--dataset", ds.dir.string()}, out, err) == cli::kInvariantViolation);
  CHECK(err.str().find("contrast violation") != std::string::npos);
}

TEST_CASE("a missing image is a consistency error") {
  Dataset ds;
  fs::remove(ds.dir / image_file_name(4));
  const auto report = validate_dataset(ds.dir);
  REQUIRE_FALSE(report.ok());
  CHECK(report.issue->kind == IssueKind::Consistency);
  CHECK(report.issue->location == "labels.jsonl:5");
  CHECK(report.issue->message.find("missing image") != std::string::npos);
}

TEST_CASE("edited pixels are caught") {
  Dataset ds;
  auto img = read_image(ds.dir / image_file_name(2));
  img.pixel(10, 10)[0] ^= 0x40;
  write_png(ds.dir / image_file_name(2), img);
  const auto report = validate_dataset(ds.dir);
  REQUIRE_FALSE(report.ok());
  CHECK(report.issue->location == "labels.jsonl:3");
}

TEST_CASE("malformed label lines report their line number") {
  Dataset ds;
  std::string text = gt::read_text(ds.dir / "labels.jsonl");
  const auto second = text.find('\n') + 1;
  text.insert(second, "{not json\n");
  gt::write_text(ds.dir / "labels.jsonl", text);
  const auto report = validate_dataset(ds.dir);
  REQUIRE_FALSE(report.ok());
  CHECK(report.issue->location == "labels.jsonl:2");
}

TEST_CASE("changed label fields are consistency errors") {
  Dataset ds;
  auto lines = ds.labels();
  std::size_t target = 0;
  while (lines[target]["instances"].empty()) ++target;
  auto edited = lines;
  edited[target]["instances"][0]["candidate_count"] = 1;
  ds.save(edited);
  auto report = validate_dataset(ds.dir);
  REQUIRE_FALSE(report.ok());
  CHECK(report.issue->kind == IssueKind::Consistency);

  edited = lines;
  edited[target]["instances"][0]["bbox"][0] = 0.5;
  ds.save(edited);
  CHECK_FALSE(validate_dataset(ds.dir).ok());

  edited = lines;
  edited.pop_back();
  ds.save(edited);
  CHECK_FALSE(validate_dataset(ds.dir).ok());

  ds.save(lines);
  CHECK(validate_dataset(ds.dir).ok());
}

TEST_CASE("changed assets and missing manifests are reported") {
  Dataset ds;
  write_png(ds.root / "bg" / "bg_00.png", gt::uniform_image(640, 480, 3));
  auto report = validate_dataset(ds.dir);
  REQUIRE_FALSE(report.ok());
  CHECK(report.issue->message.find("background directory changed") != std::string::npos);

  fs::remove(ds.dir / "meta.json");
  report = validate_dataset(ds.dir);
  REQUIRE_FALSE(report.ok());
  CHECK(report.issue->kind == IssueKind::Io);
}
