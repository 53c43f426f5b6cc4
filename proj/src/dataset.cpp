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

#include "graysynth/dataset.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>

#include "graysynth/error.hpp"
#include "graysynth/image_io.hpp"
#include "graysynth/morphology.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace graysynth {

namespace {

json point_json(double x, double y) { return json::array({x, y}); }

json placements_json(const std::vector<Placement>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(json::array({p.x, p.y}));
  return out;
}

Placement placement_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::CorruptDataset, "placement must be [x, y]");
  return {j[0].get<int>(), j[1].get<int>()};
}

template <typename Fn>
auto guarded(std::string_view what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::CorruptDataset, std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string image_file_name(std::uint64_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "images/%08llu.png", static_cast<unsigned long long>(index));
  return buf;
}

std::string analysis_file_name(std::uint64_t index, std::size_t word) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "analysis/%08llu_%zu.csv", static_cast<unsigned long long>(index), word);
  return buf;
}

AnnotationRecord make_record(const ImageResult& result, const BackgroundPool& backgrounds) {
  AnnotationRecord r;
  r.index = result.index;
  r.image = image_file_name(result.index);
  r.background_id = result.background_id;
  r.background = backgrounds.at(result.background_id).relative_path;
  r.width = result.image.width;
  r.height = result.image.height;
  for (const auto& inst : result.instances) {
    r.instances.push_back({inst.word, inst.style.font_id, inst.style.pixel_height, inst.style.rotation_deg,
                           inst.placement, inst.quad, inst.bbox, inst.chosen_gray, inst.candidate_count,
                           inst.retries_used});
  }
  for (const auto& a : result.abandoned) {
    r.abandoned.push_back({a.word, a.style.font_id, a.style.pixel_height, a.style.rotation_deg, a.reason,
                           a.retries_used, a.tried});
  }
  return r;
}

json to_json(const AnnotationRecord& record) {
  json instances = json::array();
  for (const auto& i : record.instances) {
    json quad = json::array();
    for (const auto& p : i.quad) quad.push_back(point_json(p.x, p.y));
    instances.push_back({
        {"word", i.word},
        {"font_id", i.font_id},
        {"pixel_height", i.pixel_height},
        {"rotation_deg", i.rotation_deg},
        {"placement", json::array({i.placement.x, i.placement.y})},
        {"quad", quad},
        {"bbox", json::array({i.bbox.x0, i.bbox.y0, i.bbox.x1, i.bbox.y1})},
        {"chosen_gray", i.chosen_gray},
        {"candidate_count", i.candidate_count},
        {"retries_used", i.retries_used},
    });
  }
  json abandoned = json::array();
  for (const auto& a : record.abandoned) {
    abandoned.push_back({
        {"word", a.word},
        {"font_id", a.font_id},
        {"pixel_height", a.pixel_height},
        {"rotation_deg", a.rotation_deg},
        {"reason", a.reason},
        {"retries_used", a.retries_used},
        {"tried", placements_json(a.tried)},
    });
  }
  return {
      {"index", record.index},
      {"image", record.image},
      {"background_id", record.background_id},
      {"background", record.background},
      {"width", record.width},
      {"height", record.height},
      {"instances", instances},
      {"abandoned", abandoned},
  };
}

AnnotationRecord record_from_json(const json& j) {
  return guarded("label record", [&] {
    AnnotationRecord r;
    r.index = j.at("index").get<std::uint64_t>();
    r.image = j.at("image").get<std::string>();
    r.background_id = j.at("background_id").get<std::size_t>();
    r.background = j.at("background").get<std::string>();
    r.width = j.at("width").get<int>();
    r.height = j.at("height").get<int>();
    for (const auto& ij : j.at("instances")) {
      InstanceRecord i;
      i.word = ij.at("word").get<std::string>();
      i.font_id = ij.at("font_id").get<int>();
      i.pixel_height = ij.at("pixel_height").get<int>();
      i.rotation_deg = ij.at("rotation_deg").get<double>();
      i.placement = placement_from(ij.at("placement"));
      const auto& quad = ij.at("quad");
      if (!quad.is_array() || quad.size() != 4) throw Error(ErrorKind::CorruptDataset, "quad must have 4 points");
      for (std::size_t k = 0; k < 4; ++k) i.quad[k] = {quad[k].at(0).get<double>(), quad[k].at(1).get<double>()};
      const auto& bbox = ij.at("bbox");
      if (!bbox.is_array() || bbox.size() != 4) throw Error(ErrorKind::CorruptDataset, "bbox must have 4 numbers");
      i.bbox = {bbox[0].get<double>(), bbox[1].get<double>(), bbox[2].get<double>(), bbox[3].get<double>()};
      i.chosen_gray = ij.at("chosen_gray").get<int>();
      i.candidate_count = ij.at("candidate_count").get<int>();
      i.retries_used = ij.at("retries_used").get<int>();
      r.instances.push_back(std::move(i));
    }
    for (const auto& aj : j.at("abandoned")) {
      AbandonedRecord a;
      a.word = aj.at("word").get<std::string>();
      a.font_id = aj.at("font_id").get<int>();
      a.pixel_height = aj.at("pixel_height").get<int>();
      a.rotation_deg = aj.at("rotation_deg").get<double>();
      a.reason = aj.at("reason").get<std::string>();
      a.retries_used = aj.at("retries_used").get<int>();
      for (const auto& p : aj.at("tried")) a.tried.push_back(placement_from(p));
      r.abandoned.push_back(std::move(a));
    }
    return r;
  });
}

json design_switches(const SynthesisConfig& config) {
  return {
      {"gray_conversion", "floor_mean_rgb"},
      {"dilation", {{"element", "square"}, {"radius", kBorderRadius}}},
      {"binarization", "coverage>0.5"},
      {"rotation_resampling", "nearest"},
      {"analysis_state", "composited"},
      {"text_color", "achromatic"},
      {"compositing", config.alpha_blend ? "coverage_blend" : "hard"},
      {"placement", "uniform"},
      {"collision_detection", false},
      {"rng", "mt19937_64, per-image stream splitmix64(seed, index)"},
  };
}

json to_json(const DatasetManifest& m) {
  const auto& c = m.config;
  return {
      {"tool_version", m.tool_version},
      {"created_at", m.created_at},
      {"config",
       {
           {"seed", c.seed},
           {"vertical_thresh", c.thresholds.vertical_fraction},
           {"min_margin", c.thresholds.min_margin},
           {"max_retries", c.max_retries},
           {"words_per_image", c.words_per_image},
           {"min_height", c.min_pixel_height},
           {"max_height", c.max_pixel_height},
           {"min_rotation", c.min_rotation_deg},
           {"max_rotation", c.max_rotation_deg},
           {"alpha_blend", c.alpha_blend},
           {"min_background_width", c.min_background.width},
           {"min_background_height", c.min_background.height},
           {"emit_analysis", m.emit_analysis},
       }},
      {"assets",
       {
           {"fonts_dir", m.assets.fonts_dir},
           {"fonts_digest", m.assets.fonts_digest},
           {"font_count", m.assets.font_count},
           {"backgrounds_dir", m.assets.backgrounds_dir},
           {"backgrounds_digest", m.assets.backgrounds_digest},
           {"background_count", m.assets.background_count},
           {"corpus_path", m.assets.corpus_path},
           {"corpus_digest", m.assets.corpus_digest},
           {"word_count", m.assets.word_count},
       }},
      {"counts",
       {
           {"images", m.counts.images},
           {"instances", m.counts.instances},
           {"abandoned", m.counts.abandoned},
       }},
      {"design", design_switches(c)},
  };
}

DatasetManifest manifest_from_json(const json& j) {
  return guarded("meta.json", [&] {
    DatasetManifest m;
    m.tool_version = j.at("tool_version").get<std::string>();
    m.created_at = j.at("created_at").get<std::string>();
    const auto& c = j.at("config");
    m.config.seed = c.at("seed").get<std::uint64_t>();
    m.config.thresholds.vertical_fraction = c.at("vertical_thresh").get<double>();
    m.config.thresholds.min_margin = c.at("min_margin").get<int>();
    m.config.max_retries = c.at("max_retries").get<int>();
    m.config.words_per_image = c.at("words_per_image").get<int>();
    m.config.min_pixel_height = c.at("min_height").get<int>();
    m.config.max_pixel_height = c.at("max_height").get<int>();
    m.config.min_rotation_deg = c.at("min_rotation").get<double>();
    m.config.max_rotation_deg = c.at("max_rotation").get<double>();
    m.config.alpha_blend = c.at("alpha_blend").get<bool>();
    m.config.min_background.width = c.at("min_background_width").get<int>();
    m.config.min_background.height = c.at("min_background_height").get<int>();
    m.emit_analysis = c.at("emit_analysis").get<bool>();
    const auto& a = j.at("assets");
    m.assets.fonts_dir = a.at("fonts_dir").get<std::string>();
    m.assets.fonts_digest = a.at("fonts_digest").get<std::string>();
    m.assets.font_count = a.at("font_count").get<std::size_t>();
    m.assets.backgrounds_dir = a.at("backgrounds_dir").get<std::string>();
    m.assets.backgrounds_digest = a.at("backgrounds_digest").get<std::string>();
    m.assets.background_count = a.at("background_count").get<std::size_t>();
    m.assets.corpus_path = a.at("corpus_path").get<std::string>();
    m.assets.corpus_digest = a.at("corpus_digest").get<std::string>();
    m.assets.word_count = a.at("word_count").get<std::size_t>();
    const auto& n = j.at("counts");
    m.counts.images = n.at("images").get<std::uint64_t>();
    m.counts.instances = n.at("instances").get<std::uint64_t>();
    m.counts.abandoned = n.at("abandoned").get<std::uint64_t>();
    return m;
  });
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

fs::path write_manifest(const DatasetManifest& manifest, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + out_dir.string() + ": " + ec.message());
  const fs::path path = out_dir / "meta.json";
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  out << to_json(manifest).dump(2) << '\n';
  if (!out) throw Error(ErrorKind::Io, "write failed: " + path.string());
  return path;
}

DatasetWriter::DatasetWriter(fs::path out_dir, bool emit_analysis, const BackgroundPool& backgrounds)
    : out_dir_(std::move(out_dir)), emit_analysis_(emit_analysis), backgrounds_(backgrounds) {
  std::error_code ec;
  fs::create_directories(out_dir_ / "images", ec);
  if (!ec && emit_analysis_) fs::create_directories(out_dir_ / "analysis", ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + out_dir_.string() + ": " + ec.message());
  labels_.open(out_dir_ / "labels.jsonl", std::ios::trunc);
  if (!labels_) throw Error(ErrorKind::Io, "cannot open " + (out_dir_ / "labels.jsonl").string());
}

SampleFiles DatasetWriter::write_files(const ImageResult& result) const {
  SampleFiles files;
  files.image = out_dir_ / image_file_name(result.index);
  write_png(files.image, result.image);
  if (emit_analysis_) {
    for (std::size_t k = 0; k < result.instances.size(); ++k) {
      const auto& analysis = result.instances[k].analysis;
      const fs::path path = out_dir_ / analysis_file_name(result.index, k);
      std::ofstream csv(path, std::ios::trunc);
      if (!csv) throw Error(ErrorKind::Io, "cannot open " + path.string());
      csv << "gray,count,is_candidate\n";
      for (int g = 0; g < kGrayLevels; ++g) {
        csv << g << ',' << analysis.histogram[g] << ',' << (analysis.candidates.contains(g) ? 1 : 0) << '\n';
      }
      if (!csv) throw Error(ErrorKind::Io, "write failed: " + path.string());
      files.analysis.push_back(path);
    }
  }
  return files;
}

void DatasetWriter::append_label(const ImageResult& result) {
  if (result.index != counts_.images) {
    throw Error(ErrorKind::InvalidArgument, "labels must be appended in index order; expected " +
                                                std::to_string(counts_.images) + ", got " +
                                                std::to_string(result.index));
  }
  labels_ << to_json(make_record(result, backgrounds_)).dump() << '\n';
  labels_.flush();
  if (!labels_) throw Error(ErrorKind::Io, "write failed: " + (out_dir_ / "labels.jsonl").string());
  ++counts_.images;
  counts_.instances += result.instances.size();
  counts_.abandoned += result.abandoned.size();
}

SampleFiles DatasetWriter::write_sample(const ImageResult& result) {
  SampleFiles files = write_files(result);
  append_label(result);
  return files;
}

}  // namespace graysynth
