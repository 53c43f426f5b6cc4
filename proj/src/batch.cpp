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

#include "graysynth/batch.hpp"

#include <algorithm>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace graysynth {

namespace {

void rethrow_first(const std::vector<std::exception_ptr>& errors) {
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

int effective_jobs(int jobs) {
#ifdef _OPENMP
  return jobs > 0 ? jobs : omp_get_max_threads();
#else
  (void)jobs;
  return 1;
#endif
}

ImageResult synthesize_indexed(const BatchInputs& in, std::uint64_t index) {
  Rng rng = Rng::for_image(in.config.seed, index);
  const std::size_t background_id = rng.below(in.backgrounds.size());
  std::vector<std::string> words;
  words.reserve(static_cast<std::size_t>(in.config.words_per_image));
  for (int k = 0; k < in.config.words_per_image; ++k) words.push_back(in.corpus.at(rng.below(in.corpus.size())));

  ImageResult result = synthesize_image(*in.backgrounds.at(background_id).image, words, in.fonts, in.config, rng);
  result.index = index;
  result.background_id = background_id;
  return result;
}

std::vector<ImageResult> synthesize_batch(const BatchInputs& in, std::uint64_t first, std::size_t count, int jobs) {
  std::vector<ImageResult> results(count);
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<std::int64_t>(count);
  const int threads = effective_jobs(jobs);
  (void)threads;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      results[static_cast<std::size_t>(i)] = synthesize_indexed(in, first + static_cast<std::uint64_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  rethrow_first(errors);
  return results;
}

std::vector<ImageResult> synthesize_batch_serial(const BatchInputs& in, std::uint64_t first, std::size_t count) {
  std::vector<ImageResult> results;
  results.reserve(count);
  for (std::size_t i = 0; i < count; ++i) results.push_back(synthesize_indexed(in, first + i));
  return results;
}

void synthesize_streaming(const BatchInputs& in, std::size_t count, int jobs, std::size_t chunk,
                          const std::function<void(ImageResult&)>& per_image_parallel,
                          const std::function<void(ImageResult&)>& sink) {
  chunk = std::max<std::size_t>(chunk, 1);
  const int threads = effective_jobs(jobs);
  (void)threads;
  std::vector<ImageResult> results;
  std::vector<std::exception_ptr> errors;
  for (std::size_t first = 0; first < count; first += chunk) {
    const std::size_t size = std::min(chunk, count - first);
    results.assign(size, ImageResult{});
    errors.assign(size, nullptr);
    const auto n = static_cast<std::int64_t>(size);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t i = 0; i < n; ++i) {
      const auto slot = static_cast<std::size_t>(i);
      try {
        results[slot] = synthesize_indexed(in, first + slot);
        if (per_image_parallel) per_image_parallel(results[slot]);
      } catch (...) {
        errors[slot] = std::current_exception();
      }
    }
    rethrow_first(errors);
    for (auto& r : results) sink(r);
  }
}

}  // namespace graysynth
