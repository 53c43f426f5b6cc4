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

#include "graysynth/assets.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <memory>

#include <openssl/evp.h>

#include "graysynth/error.hpp"
#include "graysynth/image_io.hpp"

namespace fs = std::filesystem;

namespace graysynth {

namespace {

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new(), &EVP_MD_CTX_free) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) {
      throw Error(ErrorKind::Io, "SHA-256 unavailable");
    }
  }

  void update(const void* data, std::size_t size) { EVP_DigestUpdate(ctx_.get(), data, size); }
  void update(const std::string& s) { update(s.data(), s.size() + 1); }  // includes the terminator

  void update_file(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot read " + file.string());
    std::array<char, 1 << 16> buffer;
    while (in) {
      in.read(buffer.data(), buffer.size());
      update(buffer.data(), static_cast<std::size_t>(in.gcount()));
    }
  }

  std::string hex() {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int length = 0;
    EVP_DigestFinal_ex(ctx_.get(), digest.data(), &length);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < length; ++i) {
      out.push_back(kHex[digest[i] >> 4]);
      out.push_back(kHex[digest[i] & 15]);
    }
    return out;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

std::string lower_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext;
}

struct Found {
  fs::path path;
  std::string relative;
};

std::vector<Found> collect(const fs::path& dir, std::initializer_list<const char*> extensions) {
  if (!fs::is_directory(dir)) throw Error(ErrorKind::Io, "not a directory: " + dir.string());
  std::vector<Found> found;
  for (const auto& entry : fs::recursive_directory_iterator(dir, fs::directory_options::follow_directory_symlink)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = lower_extension(entry.path());
    if (std::none_of(extensions.begin(), extensions.end(), [&](const char* e) { return ext == e; })) continue;
    found.push_back({entry.path(), fs::relative(entry.path(), dir).generic_string()});
  }
  std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) { return a.relative < b.relative; });
  return found;
}

std::string_view trim(std::string_view s) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && is_space(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string sha256_hex_of_file(const fs::path& file) {
  Sha256 sha;
  sha.update_file(file);
  return sha.hex();
}

FontLibrary FontLibrary::single(const fs::path& font_file) {
  FontEntry entry{0, font_file, font_file.filename().generic_string(), {}, FontFace::from_file(font_file)};
  entry.family = entry.face.family_name();
  std::vector<FontEntry> entries;
  entries.push_back(std::move(entry));
  return FontLibrary(font_file.parent_path(), std::move(entries), {});
}

const FontEntry& FontLibrary::at(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= entries_.size()) {
    throw Error(ErrorKind::InvalidArgument, "unknown font id " + std::to_string(id));
  }
  return entries_[static_cast<std::size_t>(id)];
}

std::string FontLibrary::digest() const {
  Sha256 sha;
  for (const auto& e : entries_) {
    sha.update(e.relative_path);
    sha.update_file(e.path);
  }
  return sha.hex();
}

std::string BackgroundPool::digest() const {
  Sha256 sha;
  for (const auto& e : entries_) {
    sha.update(e.relative_path);
    sha.update_file(e.path);
  }
  return sha.hex();
}

FontLibrary load_fonts(const fs::path& dir) {
  std::vector<FontEntry> entries;
  std::vector<std::string> warnings;
  for (auto& f : collect(dir, {".ttf", ".otf"})) {
    try {
      FontFace face = FontFace::from_file(f.path);
      std::string family = face.family_name();
      entries.push_back({static_cast<int>(entries.size()), f.path, f.relative, std::move(family), std::move(face)});
    } catch (const Error& e) {
      warnings.push_back("skipping font " + f.relative + ": " + e.what());
    }
  }
  if (entries.empty()) throw Error(ErrorKind::EmptyLibrary, "no usable fonts under " + dir.string());
  return FontLibrary(dir, std::move(entries), std::move(warnings));
}

BackgroundPool load_backgrounds(const fs::path& dir, MinDims min_dims) {
  std::vector<BackgroundEntry> entries;
  std::vector<std::string> warnings;
  for (auto& f : collect(dir, {".png", ".jpg", ".jpeg"})) {
    try {
      auto image = std::make_shared<RgbImage>(read_image(f.path));
      if (image->width < min_dims.width || image->height < min_dims.height) {
        warnings.push_back("skipping background " + f.relative + ": " + std::to_string(image->width) + "x" +
                           std::to_string(image->height) + " is below the " + std::to_string(min_dims.width) +
                           "x" + std::to_string(min_dims.height) + " minimum");
        continue;
      }
      entries.push_back({f.path, f.relative, std::move(image)});
    } catch (const Error& e) {
      warnings.push_back("skipping background " + f.relative + ": " + e.what());
    }
  }
  if (entries.empty()) throw Error(ErrorKind::EmptyPool, "no usable backgrounds under " + dir.string());
  return BackgroundPool(dir, std::move(entries), std::move(warnings));
}

WordCorpus load_corpus(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open corpus " + file.string());
  std::vector<std::string> words;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view word = trim(line);
    if (word.empty()) continue;
    try {
      decode_utf8(word);
    } catch (const Error&) {
      throw Error(ErrorKind::InvalidArgument, file.string() + ":" + std::to_string(line_no) + ": invalid UTF-8");
    }
    words.emplace_back(word);
  }
  if (words.empty()) throw Error(ErrorKind::EmptyCorpus, "no words in " + file.string());
  return WordCorpus(std::move(words));
}

}  // namespace graysynth
