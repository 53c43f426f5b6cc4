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

// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include <random>

#include "graysynth/batch.hpp"
#include "graysynth/morphology.hpp"
#include "support/fixtures.hpp"

using namespace graysynth;
namespace gt = graysynth::testing;

namespace {

GlyphMask text_like_mask(int w, int h) {
  std::mt19937 gen(3);
  std::bernoulli_distribution on(0.35);
  GlyphMask m(w, h);
  for (auto& b : m.bits) b = on(gen);
  return m;
}

void BM_Dilate(benchmark::State& state) {
  const auto m = text_like_mask(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)) / 4);
  for (auto _ : state) benchmark::DoNotOptimize(dilate(m, 2));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m.bits.size()));
}

void BM_DilateReference(benchmark::State& state) {
  const auto m = text_like_mask(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)) / 4);
  for (auto _ : state) benchmark::DoNotOptimize(reference::dilate(m, 2));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m.bits.size()));
}

struct BatchFixture {
  gt::TempDir dir{"kernels-bench"};
  FontLibrary fonts = load_fonts(gt::fonts_dir());
  BackgroundPool backgrounds;
  WordCorpus corpus = load_corpus(gt::data_dir() / "words.txt");
  SynthesisConfig config;

  BatchFixture() {
    gt::write_backgrounds(dir.path(), 6);
    backgrounds = load_backgrounds(dir.path());
    config.words_per_image = 3;
  }
  BatchInputs inputs() const { return {fonts, backgrounds, corpus, config}; }
};

BatchFixture& batch_fixture() {
  static BatchFixture f;
  return f;
}

constexpr std::size_t kBatch = 64;

void BM_BatchSerial(benchmark::State& state) {
  const auto in = batch_fixture().inputs();
  for (auto _ : state) benchmark::DoNotOptimize(synthesize_batch_serial(in, 0, kBatch));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(kBatch));
}

void BM_BatchOpenMP(benchmark::State& state) {
  const auto in = batch_fixture().inputs();
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(synthesize_batch(in, 0, kBatch, jobs));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(kBatch));
  state.counters["jobs"] = effective_jobs(jobs);
}

}  // namespace

BENCHMARK(BM_Dilate)->Arg(128)->Arg(512)->Arg(2048);
BENCHMARK(BM_DilateReference)->Arg(128)->Arg(512)->Arg(2048);
BENCHMARK(BM_BatchSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BatchOpenMP)->Arg(0)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
