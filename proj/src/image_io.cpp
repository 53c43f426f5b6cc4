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

#include "graysynth/image_io.hpp"

#include <cstring>
#include <fstream>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "graysynth/error.hpp"

namespace graysynth {

namespace {

// Fast zlib level; output is still lossless and deterministic.
const std::vector<int> kPngParams = {cv::IMWRITE_PNG_COMPRESSION, 3};

cv::Mat to_bgr(const RgbImage& image) {
  cv::Mat bgr(image.height, image.width, CV_8UC3);
  for (int y = 0; y < image.height; ++y) {
    const std::uint8_t* src = image.pixel(0, y);
    auto* dst = bgr.ptr<std::uint8_t>(y);
    for (int x = 0; x < image.width; ++x) {
      dst[3 * x + 0] = src[3 * x + 2];
      dst[3 * x + 1] = src[3 * x + 1];
      dst[3 * x + 2] = src[3 * x + 0];
    }
  }
  return bgr;
}

}  // namespace

RgbImage read_image(const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path)) {
    throw Error(ErrorKind::Io, "no such image file: " + path.string());
  }
  cv::Mat bgr;
  try {
    bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
  } catch (const cv::Exception& e) {
    throw Error(ErrorKind::Io, "cannot decode " + path.string() + ": " + e.what());
  }
  if (bgr.empty() || bgr.type() != CV_8UC3) {
    throw Error(ErrorKind::Io, "cannot decode " + path.string());
  }
  RgbImage out(bgr.cols, bgr.rows);
  for (int y = 0; y < out.height; ++y) {
    const auto* src = bgr.ptr<std::uint8_t>(y);
    std::uint8_t* dst = out.pixel(0, y);
    for (int x = 0; x < out.width; ++x) {
      dst[3 * x + 0] = src[3 * x + 2];
      dst[3 * x + 1] = src[3 * x + 1];
      dst[3 * x + 2] = src[3 * x + 0];
    }
  }
  return out;
}

std::vector<std::uint8_t> encode_png(const RgbImage& image) {
  std::vector<std::uint8_t> buffer;
  if (!cv::imencode(".png", to_bgr(image), buffer, kPngParams)) {
    throw Error(ErrorKind::Io, "PNG encoding failed");
  }
  return buffer;
}

void write_png(const std::filesystem::path& path, const RgbImage& image) {
  const auto bytes = encode_png(image);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::Io, "write failed: " + path.string());
}

}  // namespace graysynth
