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

#include "graysynth/validate.hpp"

#include <cstdlib>
#include <fstream>
#include <vector>

#include "graysynth/assets.hpp"
#include "graysynth/batch.hpp"
#include "graysynth/dataset.hpp"
#include "graysynth/error.hpp"
#include "graysynth/image_io.hpp"
#include "graysynth/morphology.hpp"
#include "graysynth/pipeline.hpp"

namespace fs = std::filesystem;

namespace graysynth {

GrayLevelSet used_grays(const GrayHistogram& hist, double vertical_fraction) {
  return GrayLevelSet::all() - unused_grays(hist, vertical_fraction);
}

bool satisfies_contrast(int gray, const GrayHistogram& hist, const AnalysisThresholds& thresholds) {
  for (int u : used_grays(hist, thresholds.vertical_fraction).levels()) {
    if (std::abs(gray - u) <= thresholds.min_margin) return false;
  }
  return true;
}

namespace {

ValidationIssue issue(IssueKind kind, std::string location, std::string message) {
  return {kind, std::move(location), std::move(message)};
}

std::string line_ref(std::size_t line) { return "labels.jsonl:" + std::to_string(line); }

std::string instance_ref(const AnnotationRecord& r, std::size_t k) {
  return r.image + " instance " + std::to_string(k) + " (\"" + r.instances[k].word + "\")";
}

struct Context {
  fs::path dir;
  DatasetManifest manifest;
  FontLibrary fonts;
  BackgroundPool backgrounds;
};

std::optional<ValidationIssue> check_record(const Context& ctx, const AnnotationRecord& r, std::size_t line,
                                            std::uint64_t& instances_checked) {
  const auto& cfg = ctx.manifest.config;
  const std::string where = line_ref(line);
  const fs::path image_path = ctx.dir / r.image;
  if (!fs::is_regular_file(image_path)) {
    return issue(IssueKind::Consistency, where, "missing image file " + image_path.string());
  }
  RgbImage saved;
  try {
    saved = read_image(image_path);
  } catch (const Error& e) {
    return issue(IssueKind::Consistency, where, e.what());
  }
  if (saved.width != r.width || saved.height != r.height) {
    return issue(IssueKind::Consistency, where, r.image + " is " + std::to_string(saved.width) + "x" +
                                                    std::to_string(saved.height) + " but the label says " +
                                                    std::to_string(r.width) + "x" + std::to_string(r.height));
  }
  if (r.background_id >= ctx.backgrounds.size() ||
      ctx.backgrounds.at(r.background_id).relative_path != r.background) {
    return issue(IssueKind::Consistency, where, "background " + r.background + " does not match id " +
                                                    std::to_string(r.background_id));
  }
  BackgroundState state = *ctx.backgrounds.at(r.background_id).image;
  if (state.width != r.width || state.height != r.height) {
    return issue(IssueKind::Consistency, where, "background size differs from the image size");
  }

  std::vector<std::pair<Placement, GlyphMask>> inked;
  for (std::size_t k = 0; k < r.instances.size(); ++k) {
    const auto& inst = r.instances[k];
    const std::string who = where + " " + instance_ref(r, k);
    if (inst.font_id < 0 || static_cast<std::size_t>(inst.font_id) >= ctx.fonts.size()) {
      return issue(IssueKind::Consistency, who, "unknown font id " + std::to_string(inst.font_id));
    }
    if (inst.retries_used < 0 || inst.retries_used > cfg.max_retries) {
      return issue(IssueKind::Consistency, who, "retries_used outside [0, max_retries]");
    }
    if (inst.chosen_gray < 0 || inst.chosen_gray > 255) {
      return issue(IssueKind::Consistency, who, "chosen_gray outside [0,255]");
    }
    for (const auto& p : inst.quad) {
      if (p.x < 0 || p.y < 0 || p.x > r.width || p.y > r.height) {
        return issue(IssueKind::Consistency, who, "quad leaves the image");
      }
    }
    if (hull_of(inst.quad) != inst.bbox) return issue(IssueKind::Consistency, who, "bbox is not the hull of quad");

    RenderedWord rendered;
    GrayHistogram hist;
    try {
      rendered = rasterize(ctx.fonts.at(inst.font_id).face, inst.word,
                           {inst.font_id, inst.pixel_height, inst.rotation_deg});
      hist = sample_border_grays(state, inst.placement, border_of(rendered.mask));
    } catch (const Error& e) {
      return issue(IssueKind::Consistency, who, e.what());
    }

    const GrayLevelSet used = used_grays(hist, cfg.thresholds.vertical_fraction);
    for (int u : used.levels()) {
      if (std::abs(inst.chosen_gray - u) <= cfg.thresholds.min_margin) {
        return issue(IssueKind::ContrastViolation, who,
                     "chosen gray " + std::to_string(inst.chosen_gray) + " is within " +
                         std::to_string(cfg.thresholds.min_margin) + " of border gray " + std::to_string(u) + " (" +
                         std::to_string(hist[u]) + " pixels)");
      }
    }
    const GrayLevelSet candidates = design_colors(hist, cfg.thresholds);
    if (!candidates.contains(inst.chosen_gray) || static_cast<int>(candidates.size()) != inst.candidate_count) {
      return issue(IssueKind::Consistency, who, "recorded candidate data does not match the recomputed analysis");
    }

    const Placement ink_origin{inst.placement.x + kBorderRadius, inst.placement.y + kBorderRadius};
    composite(state, rendered.mask, rendered.coverage, ink_origin, inst.chosen_gray, cfg.alpha_blend);
    inked.emplace_back(ink_origin, std::move(rendered.mask));
    ++instances_checked;
  }
  for (std::size_t k = 0; k < r.abandoned.size(); ++k) {
    if (r.abandoned[k].retries_used > cfg.max_retries) {
      return issue(IssueKind::Consistency, where, "abandoned word " + std::to_string(k) + " exceeds max_retries");
    }
  }

  if (state.rgb != saved.rgb) {
    std::size_t first = 0;
    while (state.rgb[first] == saved.rgb[first]) ++first;
    const int x = static_cast<int>((first / 3) % static_cast<std::size_t>(r.width));
    const int y = static_cast<int>((first / 3) / static_cast<std::size_t>(r.width));
    std::string culprit = "the background";
    for (std::size_t k = inked.size(); k-- > 0;) {
      const auto& [origin, mask] = inked[k];
      const int mx = x - origin.x, my = y - origin.y;
      if (mx >= 0 && my >= 0 && mx < mask.width && my < mask.height && mask.at(mx, my)) {
        culprit = instance_ref(r, k);
        break;
      }
    }
    return issue(IssueKind::Consistency, where,
                 r.image + " differs from the replayed render at (" + std::to_string(x) + ", " + std::to_string(y) +
                     "), under " + culprit);
  }
  return std::nullopt;
}

}  // namespace

ValidationReport validate_dataset(const fs::path& dataset_dir, int jobs) {
  ValidationReport report;
  Context ctx;
  ctx.dir = dataset_dir;

  const fs::path meta_path = dataset_dir / "meta.json";
  std::ifstream meta(meta_path);
  if (!meta) {
    report.issue = issue(IssueKind::Io, meta_path.string(), "cannot open manifest");
    return report;
  }
  try {
    ctx.manifest = manifest_from_json(nlohmann::json::parse(meta));
    ctx.manifest.config.validate();
  } catch (const nlohmann::json::exception& e) {
    report.issue = issue(IssueKind::Consistency, meta_path.string(), e.what());
    return report;
  } catch (const Error& e) {
    report.issue = issue(IssueKind::Consistency, meta_path.string(), e.what());
    return report;
  }

  try {
    ctx.fonts = load_fonts(ctx.manifest.assets.fonts_dir);
    ctx.backgrounds = load_backgrounds(ctx.manifest.assets.backgrounds_dir, ctx.manifest.config.min_background);
  } catch (const Error& e) {
    report.issue = issue(IssueKind::Io, meta_path.string(), std::string("cannot reload assets: ") + e.what());
    return report;
  }
  if (ctx.fonts.digest() != ctx.manifest.assets.fonts_digest) {
    report.issue = issue(IssueKind::Consistency, ctx.manifest.assets.fonts_dir, "font directory changed since generation");
    return report;
  }
  if (ctx.backgrounds.digest() != ctx.manifest.assets.backgrounds_digest) {
    report.issue = issue(IssueKind::Consistency, ctx.manifest.assets.backgrounds_dir,
                         "background directory changed since generation");
    return report;
  }

  const fs::path labels_path = dataset_dir / "labels.jsonl";
  std::ifstream labels(labels_path);
  if (!labels) {
    report.issue = issue(IssueKind::Io, labels_path.string(), "cannot open labels");
    return report;
  }
  std::vector<AnnotationRecord> records;
  std::string text;
  for (std::size_t line = 1; std::getline(labels, text); ++line) {
    try {
      records.push_back(record_from_json(nlohmann::json::parse(text)));
    } catch (const nlohmann::json::exception& e) {
      report.issue = issue(IssueKind::Consistency, line_ref(line), e.what());
      return report;
    } catch (const Error& e) {
      report.issue = issue(IssueKind::Consistency, line_ref(line), e.what());
      return report;
    }
    const auto& r = records.back();
    if (r.index != line - 1 || r.image != image_file_name(r.index)) {
      report.issue = issue(IssueKind::Consistency, line_ref(line), "record out of order or misnamed image");
      return report;
    }
  }
  if (records.size() != ctx.manifest.counts.images) {
    report.issue = issue(IssueKind::Consistency, labels_path.string(),
                         std::to_string(records.size()) + " label lines but the manifest counts " +
                             std::to_string(ctx.manifest.counts.images) + " images");
    return report;
  }

  std::vector<std::optional<ValidationIssue>> issues(records.size());
  std::vector<std::uint64_t> checked(records.size(), 0);
  const auto n = static_cast<std::int64_t>(records.size());
  const int threads = effective_jobs(jobs);
  (void)threads;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      issues[k] = check_record(ctx, records[k], k + 1, checked[k]);
    } catch (const std::exception& e) {
      issues[k] = issue(IssueKind::Consistency, line_ref(k + 1), e.what());
    }
  }

  std::uint64_t instances = 0, abandoned = 0;
  for (std::size_t k = 0; k < records.size(); ++k) {
    if (issues[k]) {
      report.issue = issues[k];
      return report;
    }
    ++report.images_checked;
    report.instances_checked += checked[k];
    instances += records[k].instances.size();
    abandoned += records[k].abandoned.size();
  }
  if (instances != ctx.manifest.counts.instances || abandoned != ctx.manifest.counts.abandoned) {
    report.issue = issue(IssueKind::Consistency, meta_path.string(), "instance/abandoned counts disagree with labels");
  }
  return report;
}

}  // namespace graysynth
