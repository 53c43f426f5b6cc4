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

#include "support/fixtures.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

#include "graysynth/image_io.hpp"

namespace fs = std::filesystem;

namespace graysynth::testing {

fs::path data_dir() { return GRAYSYNTH_TEST_DATA; }
fs::path fonts_dir() { return data_dir() / "fonts"; }
fs::path font_path(const std::string& file) { return fonts_dir() / file; }

TempDir::TempDir(const std::string& tag) {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          ("graysynth-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

RgbImage uniform_image(int width, int height, std::uint8_t gray) { return RgbImage(width, height, gray); }

RgbImage cycling_image(int width, int height) {
  RgbImage img(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const auto g = static_cast<std::uint8_t>(x % 256);
      img.set(x, y, g, g, g);
    }
  }
  return img;
}

RgbImage varied_background(int k, int width, int height) {
  RgbImage img(width, height);
  std::mt19937 gen(static_cast<unsigned>(1000 + k));
  std::uniform_int_distribution<int> byte(0, 255);
  const int base_r = byte(gen), base_g = byte(gen), base_b = byte(gen);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      int r = base_r, g = base_g, b = base_b;
      switch (k % 6) {
        case 0:  // horizontal gradient
          r = (base_r + x * 96 / width) % 256;
          g = (base_g + x * 96 / width) % 256;
          b = (base_b + x * 96 / width) % 256;
          break;
        case 1:  // noise over a mid-range
          r = 60 + byte(gen) / 4;
          g = 60 + byte(gen) / 4;
          b = 60 + byte(gen) / 4;
          break;
        case 2:  // wide stripes
          if ((y / 40) % 2) r = 255 - r, g = 255 - g, b = 255 - b;
          break;
        case 3:  // checkerboard
          if (((x / 32) + (y / 32)) % 2) r /= 2, g /= 2, b /= 2;
          break;
        case 4:  // vertical gradient plus light noise
          r = (y * 255 / height + byte(gen) / 16) % 256;
          g = (base_g / 2 + y * 127 / height) % 256;
          b = base_b;
          break;
        default:  // flat
          break;
      }
      img.set(x, y, static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g), static_cast<std::uint8_t>(b));
    }
  }
  return img;
}

void write_backgrounds(const fs::path& dir, int count) {
  fs::create_directories(dir);
  for (int k = 0; k < count; ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "bg_%02d.png", k);
    write_png(dir / name, varied_background(k));
  }
}

void write_text(const fs::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + file.string());
}

std::string read_text(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace graysynth::testing
