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

#include "graysynth/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <iomanip>
#include <numeric>

#include "graysynth/image_io.hpp"

namespace graysynth {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

constexpr std::size_t kEncodeSamples = 100;

}  // namespace

LatencySummary summarize(std::vector<double> samples_ms) {
  LatencySummary s;
  if (samples_ms.empty()) return s;
  std::sort(samples_ms.begin(), samples_ms.end());
  const std::size_t n = samples_ms.size();
  s.median_ms = n % 2 ? samples_ms[n / 2] : 0.5 * (samples_ms[n / 2 - 1] + samples_ms[n / 2]);
  // Nearest-rank percentile.
  const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(n)));
  s.p95_ms = samples_ms[std::max<std::size_t>(rank, 1) - 1];
  s.mean_ms = std::accumulate(samples_ms.begin(), samples_ms.end(), 0.0) / static_cast<double>(n);
  return s;
}

BenchReport run_bench(const BatchInputs& in, std::size_t count, int jobs, bool measure_encode) {
  BenchReport report;
  report.images = count;
  report.jobs = effective_jobs(jobs);
  report.encode_measured = measure_encode;

  std::vector<double> synth_ms(count, 0.0);
  std::vector<StageTimes> stages(count);
  std::vector<std::size_t> instances(count, 0), abandoned(count, 0);
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<std::int64_t>(count);
  const int threads = report.jobs;
  (void)threads;

  const auto wall0 = Clock::now();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      const auto t0 = Clock::now();
      const ImageResult r = synthesize_indexed(in, k);
      synth_ms[k] = ms_since(t0);
      stages[k] = r.times;
      instances[k] = r.instances.size();
      abandoned[k] = r.abandoned.size();
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  report.synthesis_wall_s = ms_since(wall0) / 1000.0;
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  // Encoding is measured in a second, serial pass over a prefix of the run
  // so it can never leak into the synthesis numbers.
  if (measure_encode) {
    std::vector<double> encode_ms;
    for (std::size_t k = 0; k < std::min<std::size_t>(count, kEncodeSamples); ++k) {
      const ImageResult r = synthesize_indexed(in, k);
      const auto t0 = Clock::now();
      const auto png = encode_png(r.image);
      encode_ms.push_back(ms_since(t0));
      (void)png;
    }
    report.encode_latency = summarize(std::move(encode_ms));
  }

  const auto words = static_cast<double>(in.config.words_per_image);
  std::vector<double> per_instance(count);
  for (std::size_t k = 0; k < count; ++k) {
    per_instance[k] = synth_ms[k] / words;
    report.mean_stage_ms += stages[k];
    report.instances += instances[k];
    report.abandoned += abandoned[k];
  }
  report.words_attempted = count * static_cast<std::size_t>(in.config.words_per_image);
  if (count > 0) {
    const auto c = static_cast<double>(count);
    report.mean_stage_ms.rasterize_ms /= c;
    report.mean_stage_ms.analyze_ms /= c;
    report.mean_stage_ms.composite_ms /= c;
  }
  report.image_latency = summarize(synth_ms);
  report.instance_latency = summarize(std::move(per_instance));
  return report;
}

void print_report(std::ostream& out, const BenchReport& r) {
  const auto flags = out.flags();
  out << std::fixed << std::setprecision(3);
  out << "images                 " << r.images << "\n"
      << "jobs                   " << r.jobs << "\n"
      << "words attempted        " << r.words_attempted << "\n"
      << "instances emitted      " << r.instances << "\n"
      << "abandoned              " << r.abandoned << "\n"
      << "synthesis wall (s)     " << r.synthesis_wall_s << "\n"
      << "images/sec             " << r.images_per_second() << "\n"
      << "instances/sec          " << r.instances_per_second() << "\n"
      << "image latency (ms)     median " << r.image_latency.median_ms << "  p95 " << r.image_latency.p95_ms
      << "  mean " << r.image_latency.mean_ms << "\n"
      << "instance latency (ms)  median " << r.instance_latency.median_ms << "  p95 " << r.instance_latency.p95_ms
      << "  mean " << r.instance_latency.mean_ms << "\n"
      << "stage mean per image (ms)\n"
      << "  rasterize            " << r.mean_stage_ms.rasterize_ms << "\n"
      << "  analyze              " << r.mean_stage_ms.analyze_ms << "\n"
      << "  composite            " << r.mean_stage_ms.composite_ms << "\n";
  if (r.encode_measured) {
    out << "  encode (png, excluded from synthesis)  median " << r.encode_latency.median_ms << "  p95 "
        << r.encode_latency.p95_ms << "  mean " << r.encode_latency.mean_ms << "\n";
  }
  out.flags(flags);
}

}  // namespace graysynth
