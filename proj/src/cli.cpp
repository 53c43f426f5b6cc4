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

#include "graysynth/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "graysynth/assets.hpp"
#include "graysynth/batch.hpp"
#include "graysynth/bench.hpp"
#include "graysynth/dataset.hpp"
#include "graysynth/error.hpp"
#include "graysynth/image_io.hpp"
#include "graysynth/morphology.hpp"
#include "graysynth/pipeline.hpp"
#include "graysynth/validate.hpp"

namespace fs = std::filesystem;

namespace graysynth::cli {

namespace {

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Io:
      return kIoError;
    default:
      return kConfigError;
  }
}

/// Flags and config-file keys shared by generate and bench.
struct RunOptions {
  std::string backgrounds;
  std::string fonts;
  std::string corpus;
  std::string config_file;
  std::size_t count = 0;
  int jobs = 0;
  SynthesisConfig synthesis;
};

void add_run_flags(CLI::App* sub, RunOptions& o) {
  auto& s = o.synthesis;
  sub->add_option("--backgrounds", o.backgrounds, "Directory of background images (PNG/JPEG)");
  sub->add_option("--fonts", o.fonts, "Directory of .ttf/.otf fonts");
  sub->add_option("--corpus", o.corpus, "Newline-delimited word list");
  sub->add_option("--count", o.count, "Number of images");
  sub->add_option("--words-per-image", s.words_per_image, "Words attempted per image")->capture_default_str();
  sub->add_option("--seed", s.seed, "Run seed")->capture_default_str();
  sub->add_option("--min-margin", s.thresholds.min_margin, "Minimum gray distance from used border grays")
      ->capture_default_str();
  sub->add_option("--vertical-thresh", s.thresholds.vertical_fraction,
                  "Fraction of the peak bin at or below which a gray counts as unused")
      ->capture_default_str();
  sub->add_option("--max-retries", s.max_retries, "Placements tried before a word is abandoned")
      ->capture_default_str();
  sub->add_option("--min-height", s.min_pixel_height, "Smallest text height in pixels")->capture_default_str();
  sub->add_option("--max-height", s.max_pixel_height, "Largest text height in pixels")->capture_default_str();
  sub->add_option("--min-rotation", s.min_rotation_deg, "Smallest rotation in degrees")->capture_default_str();
  sub->add_option("--max-rotation", s.max_rotation_deg, "Largest rotation in degrees")->capture_default_str();
  sub->add_option("--min-bg-width", s.min_background.width, "Backgrounds narrower than this are skipped")
      ->capture_default_str();
  sub->add_option("--min-bg-height", s.min_background.height, "Backgrounds shorter than this are skipped")
      ->capture_default_str();
  sub->add_flag("--alpha-blend", s.alpha_blend, "Blend partially covered edge pixels");
  sub->add_option("--jobs", o.jobs, "Worker threads (0 = all cores)")->capture_default_str();
  sub->add_option("--config", o.config_file, "JSON file of option values; command-line flags take precedence");
}

// Applies `config_file` to every option of `sub` that was not given on the
// command line. Keys are long flag names with '_' or '-' separators.
void merge_config_file(CLI::App* sub, const std::string& config_file) {
  if (config_file.empty()) return;
  std::ifstream in(config_file);
  if (!in) throw Error(ErrorKind::Io, "cannot open config file " + config_file);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, config_file + ": " + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::InvalidArgument, config_file + ": expected a JSON object");

  for (const auto& [key, value] : j.items()) {
    std::string name = key;
    std::replace(name.begin(), name.end(), '_', '-');
    if (name == "config") throw Error(ErrorKind::InvalidArgument, config_file + ": nested config is not allowed");
    CLI::Option* opt = sub->get_option_no_throw("--" + name);
    if (opt == nullptr) {
      throw Error(ErrorKind::InvalidArgument, config_file + ": unknown key \"" + key + "\" for " + sub->get_name());
    }
    if (opt->count() > 0) continue;
    std::string text;
    if (value.is_string()) {
      text = value.get<std::string>();
    } else if (value.is_boolean() || value.is_number()) {
      text = value.dump();
    } else {
      throw Error(ErrorKind::InvalidArgument, config_file + ": \"" + key + "\" must be a string, number or boolean");
    }
    try {
      opt->add_result(text);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw Error(ErrorKind::InvalidArgument, config_file + ": \"" + key + "\": " + e.what());
    }
  }
}

void require(bool present, const std::string& flag) {
  if (!present) throw Error(ErrorKind::InvalidArgument, flag + " is required");
}

void check_run_options(const RunOptions& o) {
  require(!o.backgrounds.empty(), "--backgrounds");
  require(!o.fonts.empty(), "--fonts");
  require(!o.corpus.empty(), "--corpus");
  if (o.count == 0) throw Error(ErrorKind::InvalidArgument, "--count must be at least 1");
  if (o.jobs < 0) throw Error(ErrorKind::InvalidArgument, "--jobs must be >= 0");
  o.synthesis.validate();
}

struct LoadedAssets {
  FontLibrary fonts;
  BackgroundPool backgrounds;
  WordCorpus corpus;
};

LoadedAssets load_assets(const RunOptions& o, std::ostream& err) {
  LoadedAssets a;
  a.fonts = load_fonts(o.fonts);
  a.backgrounds = load_backgrounds(o.backgrounds, o.synthesis.min_background);
  a.corpus = load_corpus(o.corpus);
  for (const auto& w : a.fonts.warnings()) err << "warning: " << w << "\n";
  for (const auto& w : a.backgrounds.warnings()) err << "warning: " << w << "\n";
  return a;
}

std::string absolute_string(const std::string& p) { return fs::absolute(p).lexically_normal().string(); }

int cmd_generate(const RunOptions& o, const std::string& out_dir, bool emit_analysis, std::ostream& out,
                 std::ostream& err) {
  require(!out_dir.empty(), "--out");
  check_run_options(o);
  const LoadedAssets assets = load_assets(o, err);
  const BatchInputs inputs{assets.fonts, assets.backgrounds, assets.corpus, o.synthesis};

  const auto t0 = std::chrono::steady_clock::now();
  DatasetWriter writer(out_dir, emit_analysis, assets.backgrounds);
  const int jobs = effective_jobs(o.jobs);
  synthesize_streaming(
      inputs, o.count, jobs, std::max<std::size_t>(64, static_cast<std::size_t>(jobs) * 8),
      [&](ImageResult& r) { writer.write_files(r); },
      [&](ImageResult& r) {
        for (const auto& a : r.abandoned) {
          err << "abandoned: image " << r.index << " word \"" << a.word << "\" (" << a.reason << ", "
              << a.retries_used << " retries";
          if (!a.tried.empty()) {
            err << ", tried";
            for (const auto& p : a.tried) err << " (" << p.x << "," << p.y << ")";
          }
          err << ")\n";
        }
        writer.append_label(r);
      });

  DatasetManifest manifest;
  manifest.created_at = utc_timestamp();
  manifest.config = o.synthesis;
  manifest.emit_analysis = emit_analysis;
  manifest.assets = {absolute_string(o.fonts),       assets.fonts.digest(),
                     assets.fonts.size(),            absolute_string(o.backgrounds),
                     assets.backgrounds.digest(),    assets.backgrounds.size(),
                     absolute_string(o.corpus),      sha256_hex_of_file(o.corpus),
                     assets.corpus.size()};
  manifest.counts = writer.counts();
  write_manifest(manifest, out_dir);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const auto& c = writer.counts();
  out << std::fixed << std::setprecision(3) << "images " << c.images << "\n"
      << "instances " << c.instances << "\n"
      << "abandoned " << c.abandoned << "\n"
      << "elapsed_s " << elapsed << "\n"
      << "instances_per_s " << (elapsed > 0 ? static_cast<double>(c.instances) / elapsed : 0.0) << "\n";
  return kOk;
}

int cmd_bench(const RunOptions& o, bool skip_encode, std::ostream& out, std::ostream& err) {
  check_run_options(o);
  const LoadedAssets assets = load_assets(o, err);
  const BatchInputs inputs{assets.fonts, assets.backgrounds, assets.corpus, o.synthesis};
  const BenchReport report = run_bench(inputs, o.count, o.jobs, !skip_encode);
  print_report(out, report);
  return kOk;
}

struct AnalyzeOptions {
  std::string image;
  std::string word;
  std::string font_file;
  std::optional<int> x;
  std::optional<int> y;
  int height = 32;
  double rotation = 0.0;
  std::uint64_t seed = 0;
  AnalysisThresholds thresholds;
  std::string out;
};

int cmd_analyze(const AnalyzeOptions& o, std::ostream& out, std::ostream& err) {
  require(!o.image.empty(), "--image");
  require(!o.word.empty(), "--word");
  require(!o.font_file.empty(), "--font-file");
  if (o.x.has_value() != o.y.has_value()) throw Error(ErrorKind::InvalidArgument, "give both --x and --y, or neither");
  o.thresholds.validate();

  const RgbImage image = read_image(o.image);
  const FontLibrary fonts = FontLibrary::single(o.font_file);
  const RenderedWord rendered = rasterize(fonts.at(0).face, o.word, {0, o.height, o.rotation});
  const BorderMask border = border_of(rendered.mask);

  Placement at;
  bool random = false;
  if (o.x) {
    at = {*o.x, *o.y};
  } else {
    if (border.width > image.width || border.height > image.height) {
      throw Error(ErrorKind::NoFit, "word canvas does not fit the image");
    }
    Rng rng(o.seed);
    at = {static_cast<int>(rng.between(0, image.width - border.width)),
          static_cast<int>(rng.between(0, image.height - border.height))};
    random = true;
  }

  const GrayHistogram hist = sample_border_grays(image, at, border);
  const GrayLevelSet unused = unused_grays(hist, o.thresholds.vertical_fraction);
  const GrayLevelSet edges = edge_colors(unused);
  const GrayLevelSet candidates = design_colors(hist, o.thresholds);

  std::ostringstream csv;
  csv << "# placement x=" << at.x << " y=" << at.y << (random ? " (random, seed " + std::to_string(o.seed) + ")" : "")
      << " canvas " << border.width << "x" << border.height << "\n"
      << "# border_pixels " << hist.total() << " unused " << unused.size() << " edges " << edges.size()
      << " candidates " << candidates.size() << "\n"
      << "gray,count,unused,edge,candidate\n";
  for (int g = 0; g < kGrayLevels; ++g) {
    csv << g << ',' << hist[g] << ',' << unused.contains(g) << ',' << edges.contains(g) << ','
        << candidates.contains(g) << '\n';
  }

  if (o.out.empty()) {
    out << csv.str();
  } else {
    std::ofstream file(o.out, std::ios::trunc);
    if (!file || !(file << csv.str())) throw Error(ErrorKind::Io, "cannot write " + o.out);
    out << "placement " << at.x << " " << at.y << (random ? " (random)" : "") << "\n"
        << "candidates " << candidates.size() << "\n";
  }
  if (candidates.empty()) {
    err << "no candidate gray at this placement\n";
    return kNoCandidates;
  }
  return kOk;
}

int cmd_validate(const std::string& dataset, int jobs, std::ostream& out, std::ostream& err) {
  require(!dataset.empty(), "--dataset");
  const ValidationReport report = validate_dataset(dataset, jobs);
  if (report.ok()) {
    out << "ok: " << report.images_checked << " images, " << report.instances_checked
        << " instances satisfy the contrast guarantee\n";
    return kOk;
  }
  const auto& issue = *report.issue;
  const char* label = issue.kind == IssueKind::ContrastViolation ? "contrast violation"
                      : issue.kind == IssueKind::Io          ? "io error"
                                                             : "consistency error";
  err << label << ": " << issue.location << ": " << issue.message << "\n";
  return issue.kind == IssueKind::Io ? kIoError : kInvariantViolation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Synthesizes scene-text images with background-aware text grays", "graysynth"};
  app.require_subcommand(1);

  RunOptions gen;
  std::string out_dir;
  bool emit_analysis = false;
  auto* generate = app.add_subcommand("generate", "Generate a labelled dataset");
  add_run_flags(generate, gen);
  generate->add_option("--out", out_dir, "Output directory");
  generate->add_flag("--emit-analysis", emit_analysis, "Write per-word histogram/candidate CSVs");

  RunOptions bench_opts;
  bool skip_encode = false;
  auto* bench = app.add_subcommand("bench", "Measure synthesis throughput and per-stage latency");
  add_run_flags(bench, bench_opts);
  bench->add_flag("--no-encode", skip_encode, "Skip the PNG encoding measurement");

  AnalyzeOptions an;
  std::string analyze_config;
  auto* analyze = app.add_subcommand("analyze", "Print the border analysis for one word placement");
  analyze->add_option("--image", an.image, "Background image");
  analyze->add_option("--word", an.word, "Word to render");
  analyze->add_option("--font-file", an.font_file, "Font file");
  analyze->add_option("--x", an.x, "Left edge of the word canvas (random if omitted)");
  analyze->add_option("--y", an.y, "Top edge of the word canvas (random if omitted)");
  analyze->add_option("--height", an.height, "Text height in pixels")->capture_default_str();
  analyze->add_option("--rotation", an.rotation, "Rotation in degrees")->capture_default_str();
  analyze->add_option("--seed", an.seed, "Seed for the random placement")->capture_default_str();
  analyze->add_option("--min-margin", an.thresholds.min_margin, "Minimum gray distance")->capture_default_str();
  analyze->add_option("--vertical-thresh", an.thresholds.vertical_fraction, "Unused-gray fraction")
      ->capture_default_str();
  analyze->add_option("--out", an.out, "Write the CSV here instead of stdout");
  analyze->add_option("--config", analyze_config, "JSON file of option values");

  std::string dataset;
  int validate_jobs = 0;
  auto* validate = app.add_subcommand("validate", "Re-check a generated dataset");
  validate->add_option("--dataset", dataset, "Dataset directory");
  validate->add_option("--jobs", validate_jobs, "Worker threads (0 = all cores)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kConfigError;
  }

  try {
    if (generate->parsed()) {
      merge_config_file(generate, gen.config_file);
      return cmd_generate(gen, out_dir, emit_analysis, out, err);
    }
    if (bench->parsed()) {
      merge_config_file(bench, bench_opts.config_file);
      return cmd_bench(bench_opts, skip_encode, out, err);
    }
    if (analyze->parsed()) {
      merge_config_file(analyze, analyze_config);
      return cmd_analyze(an, out, err);
    }
    if (validate->parsed()) return cmd_validate(dataset, validate_jobs, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kConfigError;
}

}  // namespace graysynth::cli
