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

#include <cstddef>
#include <ostream>

#include "graysynth/batch.hpp"
#include "graysynth/pipeline.hpp"

namespace graysynth {

struct LatencySummary {
  double median_ms = 0.0;
  double p95_ms = 0.0;
  double mean_ms = 0.0;
};

struct BenchReport {
  std::size_t images = 0;
  std::size_t words_attempted = 0;
  std::size_t instances = 0;
  std::size_t abandoned = 0;
  int jobs = 1;
  /// Wall clock for the synthesis loop alone; PNG encoding is timed
  /// separately and never included here.
  double synthesis_wall_s = 0.0;
  /// Per image, synthesis only.
  LatencySummary image_latency;
  /// Per attempted word: image latency divided by words per image.
  LatencySummary instance_latency;
  /// Mean milliseconds per image in each stage.
  StageTimes mean_stage_ms;
  LatencySummary encode_latency;
  bool encode_measured = false;

  double instances_per_second() const {
    return synthesis_wall_s > 0 ? static_cast<double>(instances) / synthesis_wall_s : 0.0;
  }
  double images_per_second() const {
    return synthesis_wall_s > 0 ? static_cast<double>(images) / synthesis_wall_s : 0.0;
  }
};

/// Synthesizes images [0, count) with `jobs` threads, timing every image.
/// When `measure_encode` is set, a separate untimed-for-synthesis pass
/// re-creates up to 100 images and times their in-memory PNG encoding.
BenchReport run_bench(const BatchInputs& in, std::size_t count, int jobs, bool measure_encode);

LatencySummary summarize(std::vector<double> samples_ms);

void print_report(std::ostream& out, const BenchReport& report);

}  // namespace graysynth
