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

// Image-level batch synthesis. Image i draws everything (background, words,
// styles, placements, grays) from Rng::for_image(seed, i), so the parallel
// kernel and the serial reference produce identical results for any thread
// count.

#include <cstdint>
#include <functional>
#include <vector>

#include "graysynth/assets.hpp"
#include "graysynth/pipeline.hpp"

namespace graysynth {

struct BatchInputs {
  const FontLibrary& fonts;
  const BackgroundPool& backgrounds;
  const WordCorpus& corpus;
  const SynthesisConfig& config;
};

/// Synthesizes image `index` of the run.
ImageResult synthesize_indexed(const BatchInputs& in, std::uint64_t index);

/// Images [first, first + count), OpenMP-parallel over images. `jobs` <= 0
/// uses the OpenMP default. Results are ordered by index.
std::vector<ImageResult> synthesize_batch(const BatchInputs& in, std::uint64_t first, std::size_t count, int jobs);

/// Serial reference for synthesize_batch.
std::vector<ImageResult> synthesize_batch_serial(const BatchInputs& in, std::uint64_t first, std::size_t count);

/// Images [0, count) in chunks of `chunk`. Within a chunk, images are
/// synthesized in parallel and `per_image_parallel` runs on each of them
/// concurrently; `sink` then sees the chunk in index order, one at a time.
void synthesize_streaming(const BatchInputs& in, std::size_t count, int jobs, std::size_t chunk,
                          const std::function<void(ImageResult&)>& per_image_parallel,
                          const std::function<void(ImageResult&)>& sink);

/// Thread count OpenMP will use for `jobs` (1 when built without OpenMP).
int effective_jobs(int jobs);

}  // namespace graysynth
