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

#include <filesystem>

#include "graysynth/assets.hpp"
#include "graysynth/error.hpp"
#include "graysynth/image_io.hpp"
#include "support/fixtures.hpp"

using namespace graysynth;
namespace gt = graysynth::testing;
namespace fs = std::filesystem;

namespace {

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("load_fonts") {
  const auto lib = load_fonts(gt::fonts_dir());
  REQUIRE(lib.size() == 3);
  CHECK(lib.at(0).relative_path == "DejaVuSans.ttf");
  CHECK(lib.at(1).relative_path == "DejaVuSansMono.ttf");
  CHECK(lib.at(2).relative_path == "DejaVuSerif-Bold.ttf");
  for (int i = 0; i < 3; ++i) CHECK(lib.at(i).id == i);
  CHECK(lib.warnings().empty());
  CHECK(lib.digest().size() == 64);
  CHECK(lib.digest() == load_fonts(gt::fonts_dir()).digest());
  CHECK_THROWS_AS(lib.at(3), Error);
}

TEST_CASE("load_fonts skips corrupt files with a warning") {
  gt::TempDir dir("fonts");
  fs::copy_file(gt::font_path("DejaVuSans.ttf"), dir / "a.ttf");
  fs::create_directories(dir / "sub");
  fs::copy_file(gt::font_path("DejaVuSansMono.ttf"), dir / "sub/b.otf");
  gt::write_text(dir / "broken.ttf", "not a font at all, just some text");
  gt::write_text(dir / "readme.txt", "ignored");
  const auto lib = load_fonts(dir.path());
  REQUIRE(lib.size() == 2);
  CHECK(lib.at(0).relative_path == "a.ttf");
  CHECK(lib.at(1).relative_path == "sub/b.otf");
  CHECK(lib.warnings().size() == 1);
}

TEST_CASE("load_fonts errors") {
  gt::TempDir dir("nofonts");
  CHECK(kind_of([&] { load_fonts(dir.path()); }) == ErrorKind::EmptyLibrary);
  CHECK(kind_of([&] { load_fonts(dir / "missing"); }) == ErrorKind::Io);
}

TEST_CASE("load_backgrounds") {
  gt::TempDir dir("bgs");
  write_png(dir / "big.png", gt::varied_background(0));
  write_png(dir / "tiny.png", gt::uniform_image(32, 32, 9));
  gt::write_text(dir / "fake.jpg", "garbage");
  const auto pool = load_backgrounds(dir.path(), {64, 64});
  REQUIRE(pool.size() == 1);
  CHECK(pool.at(0).relative_path == "big.png");
  CHECK(pool.at(0).image->width == 640);
  CHECK(pool.at(0).image->height == 480);
  CHECK(*pool.at(0).image == gt::varied_background(0));
  CHECK(pool.warnings().size() == 2);
  CHECK(pool.digest().size() == 64);

  gt::TempDir small("smallbgs");
  write_png(small / "tiny.png", gt::uniform_image(32, 32, 9));
  CHECK(kind_of([&] { load_backgrounds(small.path(), {64, 64}); }) == ErrorKind::EmptyPool);
  CHECK(load_backgrounds(small.path(), {16, 16}).size() == 1);
}

TEST_CASE("load_corpus") {
  gt::TempDir dir("corpus");
  gt::write_text(dir / "a.txt", "cat\ndog\n");
  CHECK(load_corpus(dir / "a.txt").words() == std::vector<std::string>{"cat", "dog"});
  gt::write_text(dir / "b.txt", "cat \r\n\n  dog\t\n");
  CHECK(load_corpus(dir / "b.txt").words() == std::vector<std::string>{"cat", "dog"});
  gt::write_text(dir / "c.txt", "\n\n");
  CHECK(kind_of([&] { load_corpus(dir / "c.txt"); }) == ErrorKind::EmptyCorpus);
  gt::write_text(dir / "d.txt", "ok\n\xff\xfe\n");
  CHECK(kind_of([&] { load_corpus(dir / "d.txt"); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { load_corpus(dir / "none.txt"); }) == ErrorKind::Io);
  CHECK(load_corpus(gt::data_dir() / "words.txt").size() > 50);
}

TEST_CASE("sha256_hex_of_file") {
  gt::TempDir dir("sha");
  gt::write_text(dir / "abc", "abc");
  CHECK(sha256_hex_of_file(dir / "abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("image round trip") {
  gt::TempDir dir("png");
  const auto img = gt::varied_background(4, 97, 61);
  write_png(dir / "x.png", img);
  CHECK(read_image(dir / "x.png") == img);
  CHECK(kind_of([&] { read_image(dir / "missing.png"); }) == ErrorKind::Io);
}
