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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "graysynth/assets.hpp"
#include "graysynth/batch.hpp"
#include "graysynth/bench.hpp"
#include "graysynth/cli.hpp"
#include "graysynth/dataset.hpp"
#include "graysynth/image_io.hpp"
#include "graysynth/morphology.hpp"
#include "graysynth/pipeline.hpp"
#include "graysynth/validate.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace graysynth;
namespace gt = graysynth::testing;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

int run_cli(const std::vector<std::string>& args, std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (err_text) *err_text = err.str();
  return code;
}

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  std::size_t cases = 0, mismatches = 0;
  const int margins[] = {0, 8, 16, 24};
  for (int u = 0; u < kGrayLevels; ++u) {
    GrayHistogram h;
    h.add(u, 3);
    for (int m : margins) {
      ++cases;
      mismatches += design_colors(h, {0.0, m}) != gt::candidate_oracle(h, {0.0, m});
    }
  }
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> density(0.01, 1.0);
  std::uniform_int_distribution<int> count(1, 10000);
  for (int i = 0; i < 10000; ++i) {
    std::bernoulli_distribution used(density(gen));
    GrayHistogram h;
    for (int g = 0; g < kGrayLevels; ++g)
      if (used(gen)) h.add(g, static_cast<GrayHistogram::Count>(count(gen)));
    for (int m : margins) {
      ++cases;
      mismatches += design_colors(h, {0.0, m}) != gt::candidate_oracle(h, {0.0, m});
    }
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 10.0, std::to_string(cases) + " cases (1024 single-level + 10000 random x 4 margins), " +
                                             std::to_string(mismatches) + " mismatches, " + fmt("%.2f s", secs) +
                                             " (limit 10 s)"};
}

Outcome golden_cases() {
  auto used = [](std::initializer_list<int> levels) {
    GrayHistogram h;
    for (int g : levels) h.add(g);
    return h;
  };
  GrayHistogram all;
  for (int g = 0; g < kGrayLevels; ++g) all.add(g);
  const AnalysisThresholds t;
  const bool a = design_colors(used({100}), t) == (GrayLevelSet::range(0, 83) | GrayLevelSet::range(117, 255));
  const bool b = design_colors(used({100, 101, 102}), t) == (GrayLevelSet::range(0, 83) | GrayLevelSet::range(119, 255));
  const bool c = design_colors(used({0}), t) == GrayLevelSet::range(17, 255);
  const bool d = design_colors(all, t).empty();
  const int ok = a + b + c + d;
  return {ok == 4, std::to_string(ok) + "/4 hand-traced cases exact"};
}

Outcome contrast_end_to_end(const fs::path& work, const fs::path& bg_dir) {
  const auto out = work / "contrast";
  std::string err;
  const int gen = run_cli({"generate", "--backgrounds", bg_dir.string(), "--fonts", gt::fonts_dir().string(), "--corpus",
                           (gt::data_dir() / "words.txt").string(), "--out", out.string(), "--count", "1000",
                           "--words-per-image", "2", "--seed", "2026"},
                          &err);
  if (gen != 0) return {false, "generate exited " + std::to_string(gen) + ": " + err};
  const auto report = validate_dataset(out);
  const int cli_code = run_cli({"validate", "--dataset", out.string()});
  if (!report.ok()) return {false, report.issue->location + ": " + report.issue->message};
  return {cli_code == 0 && report.images_checked == 1000 && report.instances_checked > 0,
          std::to_string(report.images_checked) + " images, " + std::to_string(report.instances_checked) +
              " instances re-checked, 0 violations, validate exit " + std::to_string(cli_code)};
}

Outcome retry_policy() {
  const FontLibrary fonts = load_fonts(gt::fonts_dir());
  SynthesisConfig config;
  config.min_pixel_height = config.max_pixel_height = 64;
  config.min_rotation_deg = config.max_rotation_deg = 0.0;
  const std::vector<std::string> words{"abandonment", "spectrum", "backgrounds", "everything", "unplaceable"};
  config.words_per_image = static_cast<int>(words.size());
  const RgbImage spectrum = gt::cycling_image(640, 480);

  std::size_t emitted = 0, abandoned = 0, exact = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const auto r = synthesize_image(spectrum, words, fonts, config, rng);
    emitted += r.instances.size();
    for (const auto& a : r.abandoned) {
      ++abandoned;
      exact += a.reason == "Abandoned" && a.retries_used == 20 && a.tried.size() == 20;
    }
  }
  return {emitted == 0 && abandoned == 100 && exact == abandoned,
          std::to_string(emitted) + " instances emitted, " + std::to_string(exact) + "/" + std::to_string(abandoned) +
              " words abandoned after exactly 20 attempts"};
}

Outcome determinism(const fs::path& work, const fs::path& bg_dir) {
  auto generate = [&](const std::string& name, const std::string& jobs) {
    return run_cli({"generate", "--backgrounds", bg_dir.string(), "--fonts", gt::fonts_dir().string(), "--corpus",
                    (gt::data_dir() / "words.txt").string(), "--out", (work / name).string(), "--count", "120",
                    "--words-per-image", "3", "--seed", "77", "--jobs", jobs});
  };
  const std::vector<std::pair<std::string, std::string>> runs{{"j1a", "1"}, {"j1b", "1"}, {"j8a", "8"}, {"j8b", "8"}};
  for (const auto& [name, jobs] : runs)
    if (generate(name, jobs) != 0) return {false, "generate failed for --jobs " + jobs};

  const std::string labels = gt::read_text(work / "j1a/labels.jsonl");
  std::size_t label_matches = 0, pixel_mismatches = 0;
  for (const auto& [name, jobs] : runs) label_matches += gt::read_text(work / name / "labels.jsonl") == labels;
  for (std::uint64_t i = 0; i < 120; ++i) {
    const auto ref = read_image(work / "j1a" / image_file_name(i));
    for (const auto& [name, jobs] : runs) pixel_mismatches += !(read_image(work / name / image_file_name(i)) == ref);
  }
  return {label_matches == runs.size() && pixel_mismatches == 0,
          "4 runs (--jobs 1 x2, --jobs 8 x2), 120 images each: labels.jsonl identical in " +
              std::to_string(label_matches) + "/4, " + std::to_string(pixel_mismatches) + " pixel mismatches"};
}

Outcome throughput(const fs::path& bg_dir, std::string& report_text) {
  const FontLibrary fonts = load_fonts(gt::fonts_dir());
  const BackgroundPool backgrounds = load_backgrounds(bg_dir);
  const WordCorpus corpus = load_corpus(gt::data_dir() / "words.txt");
  SynthesisConfig config;
  config.words_per_image = 1;
  const BenchReport r = run_bench({fonts, backgrounds, corpus, config}, 1000, 1, true);
  std::ostringstream text;
  print_report(text, r);
  report_text = text.str();
  const double median = r.instance_latency.median_ms;
  const double rate = r.instances_per_second();
  return {median <= 10.0 && rate >= 100.0,
          "1000 one-word 640x480 images, 1 thread: median " + fmt("%.3f ms", median) + "/instance (limit 10 ms), " +
              fmt("%.1f", rate) + " instances/s, " + fmt("%.1f", r.images_per_second()) +
              " images/s (limits 100 instances/s and 100 images/s), PNG encoding excluded"};
}

Outcome morphology() {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<int> side(1, 48);
  std::uniform_real_distribution<double> density(0.0, 0.7);
  std::size_t failures = 0;
  const int masks = 2000;
  for (int i = 0; i < masks; ++i) {
    GlyphMask m(side(gen), side(gen));
    std::bernoulli_distribution on(density(gen));
    for (auto& b : m.bits) b = on(gen);
    const auto grown = dilate(m, 2);
    const auto border = border_of(m);
    bool ok = grown == reference::dilate(m, 2) && dilate(dilate(m, 1), 1) == grown && grown.count() >= m.count();
    for (int y = 0; y < grown.height && ok; ++y)
      for (int x = 0; x < grown.width && ok; ++x) {
        const int mx = x - 2, my = y - 2;
        const bool ink = mx >= 0 && my >= 0 && mx < m.width && my < m.height && m.at(mx, my);
        ok = !(ink && border.at(x, y)) && ((ink || border.at(x, y)) == grown.at(x, y));
      }
    GlyphMask bigger = m;
    std::bernoulli_distribution add(0.1);
    for (auto& b : bigger.bits) b = b || add(gen);
    const auto grown_bigger = dilate(bigger, 2);
    for (std::size_t k = 0; k < grown.bits.size() && ok; ++k) ok = !grown.bits[k] || grown_bigger.bits[k];
    failures += !ok;
  }
  return {failures == 0, std::to_string(masks) + " random masks: disjointness, union, composability, monotonicity; " +
                             std::to_string(failures) + " failures"};
}

}  // namespace

int main() {
  gt::TempDir work("acceptance");
  const fs::path bg_dir = work / "backgrounds";
  gt::write_backgrounds(bg_dir, 12);

  int failed = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& f) {
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
  };

  std::string bench_text;
  report(1, "oracle equivalence", oracle_equivalence);
  report(2, "golden cases", golden_cases);
  report(3, "contrast guarantee", [&] { return contrast_end_to_end(work.path(), bg_dir); });
  report(4, "retry/abandon policy", retry_policy);
  report(5, "determinism", [&] { return determinism(work.path(), bg_dir); });
  report(6, "throughput", [&] { return throughput(bg_dir, bench_text); });
  report(7, "morphology properties", morphology);
  if (!bench_text.empty()) std::printf("\nbench report (criterion 6):\n%s", bench_text.c_str());
  std::printf("\n%d/7 criteria passed\n", 7 - failed);
  return failed == 0 ? 0 : 1;
}
