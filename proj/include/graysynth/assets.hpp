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

// Input corpora. Everything here is immutable once loaded and may be read
// from any number of threads.

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "graysynth/font.hpp"
#include "graysynth/raster.hpp"

namespace graysynth {

struct FontEntry {
  int id = 0;
  std::filesystem::path path;
  /// Path relative to the library root, '/'-separated; the sort key.
  std::string relative_path;
  std::string family;
  FontFace face;
};

class FontLibrary {
 public:
  FontLibrary() = default;
  FontLibrary(std::filesystem::path root, std::vector<FontEntry> entries, std::vector<std::string> warnings)
      : root_(std::move(root)), entries_(std::move(entries)), warnings_(std::move(warnings)) {}

  /// A library holding one font with id 0.
  static FontLibrary single(const std::filesystem::path& font_file);

  std::size_t size() const noexcept { return entries_.size(); }
  const FontEntry& at(int id) const;
  const std::vector<FontEntry>& entries() const noexcept { return entries_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }
  const std::filesystem::path& root() const noexcept { return root_; }

  /// SHA-256 over (relative path, file bytes) of every entry, in id order.
  std::string digest() const;

 private:
  std::filesystem::path root_;
  std::vector<FontEntry> entries_;
  std::vector<std::string> warnings_;
};

struct BackgroundEntry {
  std::filesystem::path path;
  std::string relative_path;
  std::shared_ptr<const RgbImage> image;
};

struct MinDims {
  int width = 64;
  int height = 64;
};

class BackgroundPool {
 public:
  BackgroundPool() = default;
  BackgroundPool(std::filesystem::path root, std::vector<BackgroundEntry> entries, std::vector<std::string> warnings)
      : root_(std::move(root)), entries_(std::move(entries)), warnings_(std::move(warnings)) {}

  std::size_t size() const noexcept { return entries_.size(); }
  const BackgroundEntry& at(std::size_t id) const { return entries_.at(id); }
  const std::vector<BackgroundEntry>& entries() const noexcept { return entries_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }
  const std::filesystem::path& root() const noexcept { return root_; }

  std::string digest() const;

 private:
  std::filesystem::path root_;
  std::vector<BackgroundEntry> entries_;
  std::vector<std::string> warnings_;
};

class WordCorpus {
 public:
  WordCorpus() = default;
  explicit WordCorpus(std::vector<std::string> words) : words_(std::move(words)) {}

  std::size_t size() const noexcept { return words_.size(); }
  const std::string& at(std::size_t i) const { return words_.at(i); }
  const std::vector<std::string>& words() const noexcept { return words_; }

 private:
  std::vector<std::string> words_;
};

/// Recursively collects .ttf/.otf files, sorted by relative path; the index
/// in that order is the font id. Unparseable files become warnings.
/// Throws Error(Io) if `dir` is not a directory, Error(EmptyLibrary) if no
/// font survives.
FontLibrary load_fonts(const std::filesystem::path& dir);

/// Recursively collects and decodes .png/.jpg/.jpeg images, sorted by
/// relative path. Undecodable or undersized images become warnings.
/// Throws Error(Io) or Error(EmptyPool).
BackgroundPool load_backgrounds(const std::filesystem::path& dir, MinDims min_dims = {});

/// Newline-delimited words; surrounding whitespace trimmed, blank lines
/// dropped. Throws Error(Io), Error(InvalidArgument) on bad UTF-8, or
/// Error(EmptyCorpus).
WordCorpus load_corpus(const std::filesystem::path& file);

std::string sha256_hex_of_file(const std::filesystem::path& file);

}  // namespace graysynth
