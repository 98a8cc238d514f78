// Copyright 2026 The sscfkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sscf/error.hpp"
#include "sscf/feature_io.hpp"
#include "sscf/harness_config.hpp"
#include "sscf/labels.hpp"
#include "sscf/pipeline.hpp"
#include "sscf/synth.hpp"
#include "sscf/trajectory.hpp"
#include "sscf/wav.hpp"

namespace sscf {
namespace detail {

struct ExtractOptions {
  std::string input;
  std::string feature;
  std::string output;
  std::string format = "csv";
  bool deltas = false;
  bool exclude_sscf0 = false;
  bool no_smooth = false;
  double gamma = 1.0;
  int subbands = 6;
  double hop_ms = 10.0;
};

inline void run_extract(const ExtractOptions& opt, const CLI::App& cmd) {
  const bool is_mfcc = opt.feature.rfind("mfcc", 0) == 0;
  if (is_mfcc) {
    for (const char* flag : {"--gamma", "--subbands", "--no-smooth"}) {
      if (cmd.count(flag) > 0) {
        throw ConfigError(std::string(flag) + " applies to subband features, not " +
                          opt.feature);
      }
    }
  }
  if (opt.exclude_sscf0 && (is_mfcc || opt.feature == "sscf")) {
    throw ConfigError("--exclude-sscf0 drops an SSCF plane and only applies to "
                      "angle or polar features");
  }

  ExtractionConfig cfg;
  cfg.gamma = opt.gamma;
  cfg.num_subbands = opt.subbands;
  cfg.hop_ms = opt.hop_ms;
  cfg.exclude_sscf0 = opt.exclude_sscf0;
  if (opt.no_smooth) cfg.smooth_window = 1;

  FeatureRequest req = parse_feature_request(opt.feature);
  req.deltas = opt.deltas;

  const AudioBuffer audio = load_wav(opt.input);
  const FeatureMatrix feat = extract_features(audio, cfg, req);
  const FeatureFormat format =
      opt.format == "bin" ? FeatureFormat::bin : FeatureFormat::csv;
  write_features(feat, opt.output, format,
                 static_cast<std::uint32_t>(audio.sample_rate),
                 config_fingerprint(cfg, req));
}

struct AnalyzeOptions {
  std::string input;
  std::string labels;
  std::string report;
  double trim = 0.1;
};

inline void run_analyze(const AnalyzeOptions& opt) {
  const AudioBuffer audio = load_wav(opt.input);
  const ExtractionConfig cfg;
  const SscfTrack track = extract_sscf_track(audio, cfg);
  const LabelFile labels = read_labels(opt.labels);

  nlohmann::json report;
  report["input"] = opt.input;
  report["trim_fraction"] = opt.trim;
  report["hop_ms"] = track.frame_hop_ms;
  report["num_frames"] = track.num_frames();
  report["num_bands"] = track.num_bands();
  report["segments"] = nlohmann::json::array();
  for (const TransitionSegment& seg : labels.segments) {
    const TransitionAngleReport angles = analyze_transition(track, seg, opt.trim);
    nlohmann::json entry;
    entry["start_s"] = seg.start_s;
    entry["end_s"] = seg.end_s;
    entry["from"] = seg.label_from;
    entry["to"] = seg.label_to;
    entry["frames_used"] = angles.frames_used;
    entry["angles_deg"] = std::vector<double>(
        angles.angles_deg.data(), angles.angles_deg.data() + angles.angles_deg.size());
    report["segments"].push_back(std::move(entry));
  }

  std::ofstream out(opt.report);
  if (!out) {
    throw IoError("cannot open '" + opt.report + "' for writing");
  }
  out << report.dump(2) << '\n';
  if (!out) {
    throw IoError("failed writing report to '" + opt.report + "'");
  }
}

struct SynthOptions {
  std::string config;
  std::string output_dir;
};

inline void run_synth(const SynthOptions& opt) {
  const HarnessConfig cfg = load_harness_config(opt.config);

  std::error_code ec;
  std::filesystem::create_directories(opt.output_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory '" + opt.output_dir + "': " +
                  ec.message());
  }

  const auto out_path = [&](const std::string& stem, const char* ext) {
    return (std::filesystem::path(opt.output_dir) / (stem + ext)).string();
  };
  const auto find_vowel = [&](const std::string& label) -> const VowelSpec& {
    for (const VowelSpec& v : cfg.vowels) {
      if (v.label == label) return v;
    }
    throw DataError("transition references unknown vowel '" + label + "'");
  };

  for (const SpeakerProfile& profile : cfg.profiles) {
    for (const VowelSpec& vowel : cfg.vowels) {
      const AudioBuffer audio =
          synthesize_vowel(vowel, profile, cfg.settings.duration_s,
                           cfg.settings.sample_rate);
      const std::string path = out_path(vowel.label + "_" + profile.name, ".wav");
      write_wav16(path, audio);
      std::cout << path << '\n';
    }
    for (const auto& [from, to] : cfg.transitions) {
      const VowelSpec& v1 = find_vowel(from);
      const VowelSpec& v2 = find_vowel(to);
      const AudioBuffer audio = synthesize_transition(
          v1, v2, profile, cfg.settings.duration_s, cfg.settings.sample_rate);
      const std::string stem = from + to + "_" + profile.name;
      write_wav16(out_path(stem, ".wav"), audio);

      // Companion label file covering the interpolated middle 60 percent,
      // so the output feeds straight into `analyze`.
      std::ofstream tsv(out_path(stem, ".tsv"));
      if (!tsv) {
        throw IoError("cannot open '" + out_path(stem, ".tsv") + "' for writing");
      }
      char row[128];
      std::snprintf(row, sizeof(row), "%.6f\t%.6f\t%s-%s",
                    0.2 * cfg.settings.duration_s, 0.8 * cfg.settings.duration_s,
                    from.c_str(), to.c_str());
      tsv << row << '\n';
      std::cout << out_path(stem, ".wav") << '\n';
    }
  }
}

struct EvalOptions {
  std::string config;
  std::string report;
};

inline void run_eval(const EvalOptions& opt) {
  const HarnessConfig cfg = load_harness_config(opt.config);
  const ExperimentReport report = run_experiment(cfg);

  std::ofstream out(opt.report);
  if (!out) {
    throw IoError("cannot open '" + opt.report + "' for writing");
  }
  out << report_to_json(report).dump(2) << '\n';
  if (!out) {
    throw IoError("failed writing report to '" + opt.report + "'");
  }

  std::printf("%-12s %10s %10s\n", "feature", "matched", "cross");
  for (const auto& [kind, conditions] : report.results) {
    const auto matched = conditions.find("matched");
    const auto cross = conditions.find("cross");
    std::printf("%-12s %10.3f %10.3f\n", kind.c_str(),
                matched != conditions.end() ? matched->second.accuracy() : 0.0,
                cross != conditions.end() ? cross->second.accuracy() : 0.0);
  }
}

struct PlotDataOptions {
  std::string input;
  std::string planes;
  std::string output;
};

inline std::vector<std::pair<int, int>> parse_planes(const std::string& text,
                                                     int num_bands) {
  std::vector<std::pair<int, int>> planes;
  if (text.empty()) {
    for (int i = 0; i + 1 < num_bands; ++i) planes.emplace_back(i, i + 1);
    return planes;
  }
  std::istringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ';')) {
    int i = 0;
    int j = 0;
    char comma = 0;
    std::istringstream pair_stream(item);
    if (!(pair_stream >> i >> comma >> j) || comma != ',' ||
        (pair_stream >> std::ws, !pair_stream.eof())) {
      throw ConfigError("--planes entry '" + item + "' is not of the form i,j");
    }
    if (i < 0 || j < 0 || i >= num_bands || j >= num_bands || i == j) {
      throw ConfigError("--planes entry '" + item + "' out of range for " +
                        std::to_string(num_bands) + " subbands");
    }
    planes.emplace_back(i, j);
  }
  if (planes.empty()) {
    throw ConfigError("--planes lists no planes");
  }
  return planes;
}

inline void run_plot_data(const PlotDataOptions& opt) {
  const AudioBuffer audio = load_wav(opt.input);
  const ExtractionConfig cfg;
  const SscfTrack track = extract_sscf_track(audio, cfg);
  const std::vector<std::pair<int, int>> planes =
      parse_planes(opt.planes, track.num_bands());

  std::ofstream out(opt.output);
  if (!out) {
    throw IoError("cannot open '" + opt.output + "' for writing");
  }
  out << "# columns: frame_index, time_s, plane, sscf_i, sscf_ip1, "
         "transition_angle_deg, polar_angle_deg, polar_radius_hz\n";

  constexpr double kRadToDeg = 180.0 / EIGEN_PI;
  const double hop_s = track.frame_hop_ms / 1000.0;
  char row[256];
  for (const auto& [i, j] : planes) {
    for (Eigen::Index t = 0; t < track.num_frames(); ++t) {
      // Frame-to-frame direction with a window of one; the first frame
      // replicates the first computed value, as in the angle features.
      const Eigen::Index ref = std::max<Eigen::Index>(t, 1);
      const double di = track.values(ref, i) - track.values(ref - 1, i);
      const double dj = track.values(ref, j) - track.values(ref - 1, j);
      double transition_deg = 0.0;
      if (di != 0.0 || dj != 0.0) {
        transition_deg = direction_deg(dj, di);
      }
      const double polar_deg =
          kRadToDeg * std::atan(track.values(t, j) / track.values(t, i));
      const double radius = std::hypot(track.values(t, i), track.values(t, j));
      std::snprintf(row, sizeof(row),
                    "%lld,%.6f,%d-%d,%.12g,%.12g,%.12g,%.12g,%.12g",
                    static_cast<long long>(t), static_cast<double>(t) * hop_s, i,
                    j, track.values(t, i), track.values(t, j), transition_deg,
                    polar_deg, radius);
      out << row << '\n';
    }
  }
  if (!out) {
    throw IoError("failed writing plot data to '" + opt.output + "'");
  }
}

}  // namespace detail

/// Command-line entry point. Returns the process exit code: 0 on success,
/// 2 for usage or configuration errors, 3 for I/O failures, 4 for malformed
/// data, and 1 for anything unexpected.
inline int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Spectral subband centroid features and trajectory analysis"};
  app.require_subcommand(1);

  detail::ExtractOptions extract;
  CLI::App* extract_cmd =
      app.add_subcommand("extract", "Extract features from a WAV file");
  extract_cmd->add_option("--input", extract.input, "Input WAV file")->required();
  extract_cmd
      ->add_option("--feature", extract.feature,
                   "Feature kind: sscf, angle, polar, mfcc6, or mfcc13")
      ->required()
      ->check(CLI::IsMember({"sscf", "angle", "polar", "mfcc6", "mfcc13"}));
  extract_cmd->add_flag("--deltas", extract.deltas,
                        "Append delta and delta-delta coefficients");
  extract_cmd->add_flag("--exclude-sscf0", extract.exclude_sscf0,
                        "Drop the SSCF0/SSCF1 plane (angle and polar only)");
  extract_cmd->add_option("--gamma", extract.gamma,
                          "Power spectrum exponent inside the centroid");
  extract_cmd->add_option("--subbands", extract.subbands,
                          "Number of mel-equal subbands");
  extract_cmd->add_option("--hop-ms", extract.hop_ms, "Frame hop in ms");
  extract_cmd->add_flag("--no-smooth", extract.no_smooth,
                        "Disable 3-frame smoothing of the SSCF track");
  extract_cmd->add_option("--output", extract.output, "Output feature file")
      ->required();
  extract_cmd->add_option("--format", extract.format, "Output format")
      ->check(CLI::IsMember({"csv", "bin"}));
  extract_cmd->callback([&] { detail::run_extract(extract, *extract_cmd); });

  detail::AnalyzeOptions analyze;
  CLI::App* analyze_cmd = app.add_subcommand(
      "analyze", "Measure transition angles over labeled segments");
  analyze_cmd->add_option("--input", analyze.input, "Input WAV file")->required();
  analyze_cmd->add_option("--labels", analyze.labels, "Tab-separated label file")
      ->required();
  analyze_cmd
      ->add_option("--trim", analyze.trim,
                   "Fraction trimmed from each side of a segment")
      ->check(CLI::Range(0.0, 0.5));
  analyze_cmd->add_option("--report", analyze.report, "JSON report path")
      ->required();
  analyze_cmd->callback([&] { detail::run_analyze(analyze); });

  detail::SynthOptions synth;
  CLI::App* synth_cmd = app.add_subcommand(
      "synth", "Synthesize the configured vowels and transitions");
  synth_cmd->add_option("--config", synth.config, "JSON harness configuration")
      ->required();
  synth_cmd->add_option("--output-dir", synth.output_dir, "Output directory")
      ->required();
  synth_cmd->callback([&] { detail::run_synth(synth); });

  detail::EvalOptions eval;
  CLI::App* eval_cmd = app.add_subcommand(
      "eval", "Run the cross-speaker classification experiment");
  eval_cmd->add_option("--config", eval.config, "JSON harness configuration")
      ->required();
  eval_cmd->add_option("--report", eval.report, "JSON report path")->required();
  eval_cmd->callback([&] { detail::run_eval(eval); });

  detail::PlotDataOptions plot;
  CLI::App* plot_cmd = app.add_subcommand(
      "plot-data", "Emit per-frame SSCF plane coordinates as CSV");
  plot_cmd->add_option("--input", plot.input, "Input WAV file")->required();
  plot_cmd->add_option("--planes", plot.planes,
                       "Semicolon-separated i,j subband pairs (default: all "
                       "consecutive planes)");
  plot_cmd->add_option("--output", plot.output, "Output CSV path")->required();
  plot_cmd->callback([&] { detail::run_plot_data(plot); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "sscf: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "sscf: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "sscf: " << e.what() << '\n';
    return 3;
  } catch (const DataError& e) {
    std::cerr << "sscf: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "sscf: unexpected error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace sscf
