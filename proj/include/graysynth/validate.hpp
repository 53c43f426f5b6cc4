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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "graysynth/gray_analysis.hpp"

namespace graysynth {

enum class IssueKind {
  /// Labels, images and manifest disagree, or a record is malformed.
  Consistency,
  /// A rendered gray sits within the margin of a used border gray.
  ContrastViolation,
  /// The dataset or its assets could not be read.
  Io,
};

struct ValidationIssue {
  IssueKind kind = IssueKind::Consistency;
  /// "labels.jsonl:12" or a file path.
  std::string location;
  std::string message;
};

struct ValidationReport {
  std::uint64_t images_checked = 0;
  std::uint64_t instances_checked = 0;
  std::optional<ValidationIssue> issue;

  bool ok() const noexcept { return !issue.has_value(); }
};

/// The levels in `hist` a text gray must keep its distance from.
GrayLevelSet used_grays(const GrayHistogram& hist, double vertical_fraction);

/// True when |gray - u| > min_margin for every used level u.
bool satisfies_contrast(int gray, const GrayHistogram& hist, const AnalysisThresholds& thresholds);

/// Re-checks a generated dataset. Every image is replayed from its source
/// background: each word is re-rasterized from the recorded style, its
/// border histogram is taken from the image state at its render time and
/// checked against its chosen gray, and the final replay must equal the
/// saved PNG pixel for pixel. Reports the first issue in index order.
ValidationReport validate_dataset(const std::filesystem::path& dataset_dir, int jobs = 0);

}  // namespace graysynth
