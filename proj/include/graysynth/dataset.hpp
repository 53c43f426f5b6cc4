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

// On-disk dataset layout:
//
//   out/meta.json           run manifest (config, asset digests, counts)
//   out/labels.jsonl        one AnnotationRecord per image, in index order
//   out/images/NNNNNNNN.png
//   out/analysis/NNNNNNNN_K.csv   (opt-in) histogram + candidates of word K

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "graysynth/assets.hpp"
#include "graysynth/pipeline.hpp"

namespace graysynth {

inline constexpr std::string_view kToolVersion = "1.0.0";

/// "images/00000007.png" for index 7.
std::string image_file_name(std::uint64_t index);
/// "analysis/00000007_1.csv" for index 7, word 1.
std::string analysis_file_name(std::uint64_t index, std::size_t word);

struct InstanceRecord {
  std::string word;
  int font_id = 0;
  int pixel_height = 0;
  double rotation_deg = 0.0;
  Placement placement;
  Quad quad{};
  BoundingBox bbox;
  int chosen_gray = 0;
  int candidate_count = 0;
  int retries_used = 0;
};

struct AbandonedRecord {
  std::string word;
  int font_id = 0;
  int pixel_height = 0;
  double rotation_deg = 0.0;
  std::string reason;
  int retries_used = 0;
  std::vector<Placement> tried;
};

struct AnnotationRecord {
  std::uint64_t index = 0;
  std::string image;
  std::size_t background_id = 0;
  std::string background;
  int width = 0;
  int height = 0;
  std::vector<InstanceRecord> instances;
  std::vector<AbandonedRecord> abandoned;
};

AnnotationRecord make_record(const ImageResult& result, const BackgroundPool& backgrounds);

nlohmann::json to_json(const AnnotationRecord& record);
/// Throws Error(CorruptDataset) describing the first missing or mistyped field.
AnnotationRecord record_from_json(const nlohmann::json& j);

struct AssetInfo {
  std::string fonts_dir;
  std::string fonts_digest;
  std::size_t font_count = 0;
  std::string backgrounds_dir;
  std::string backgrounds_digest;
  std::size_t background_count = 0;
  std::string corpus_path;
  std::string corpus_digest;
  std::size_t word_count = 0;
};

struct DatasetCounts {
  std::uint64_t images = 0;
  std::uint64_t instances = 0;
  std::uint64_t abandoned = 0;
};

struct DatasetManifest {
  std::string tool_version{kToolVersion};
  /// ISO-8601 UTC; the only field that differs between identical runs.
  std::string created_at;
  SynthesisConfig config;
  bool emit_analysis = false;
  AssetInfo assets;
  DatasetCounts counts;
};

nlohmann::json to_json(const DatasetManifest& manifest);
DatasetManifest manifest_from_json(const nlohmann::json& j);

/// The fixed modelling choices baked into this build, recorded per run.
nlohmann::json design_switches(const SynthesisConfig& config);

std::string utc_timestamp();

/// Writes out_dir/meta.json, creating out_dir recursively.
std::filesystem::path write_manifest(const DatasetManifest& manifest, const std::filesystem::path& out_dir);

struct SampleFiles {
  std::filesystem::path image;
  std::vector<std::filesystem::path> analysis;
};

/// Owns an output directory. `write_files` may be called concurrently;
/// `append_label` is single-writer and requires images in index order.
class DatasetWriter {
 public:
  DatasetWriter(std::filesystem::path out_dir, bool emit_analysis, const BackgroundPool& backgrounds);

  SampleFiles write_files(const ImageResult& result) const;
  void append_label(const ImageResult& result);

  /// write_files followed by append_label.
  SampleFiles write_sample(const ImageResult& result);

  const DatasetCounts& counts() const noexcept { return counts_; }
  const std::filesystem::path& out_dir() const noexcept { return out_dir_; }

 private:
  std::filesystem::path out_dir_;
  bool emit_analysis_;
  const BackgroundPool& backgrounds_;
  std::ofstream labels_;
  DatasetCounts counts_;
};

}  // namespace graysynth
