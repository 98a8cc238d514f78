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

#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sscf/eval.hpp"
#include "sscf/synth.hpp"

namespace sscf {

/// Vowel inventory, speaker profiles, and experiment settings as read from
/// a JSON configuration file. Shared by the `synth` and `eval` workflows.
struct HarnessConfig {
  std::vector<VowelSpec> vowels;
  std::vector<SpeakerProfile> profiles;
  std::vector<std::pair<std::string, std::string>> transitions;
  std::vector<std::string> feature_kinds;
  EvalSettings settings;
};

namespace detail {

inline ExtractionConfig parse_extraction(const nlohmann::json& j) {
  ExtractionConfig cfg;
  cfg.frame_ms = j.value("frame_ms", cfg.frame_ms);
  cfg.hop_ms = j.value("hop_ms", cfg.hop_ms);
  cfg.preemphasis = j.value("preemphasis", cfg.preemphasis);
  if (j.contains("window")) {
    const std::string w = j.at("window").get<std::string>();
    if (w == "hamming") {
      cfg.window = WindowKind::hamming;
    } else if (w == "rectangular") {
      cfg.window = WindowKind::rectangular;
    } else {
      throw DataError("config: unknown window '" + w + "'");
    }
  }
  cfg.fft_size = j.value("fft_size", cfg.fft_size);
  cfg.num_subbands = j.value("num_subbands", cfg.num_subbands);
  cfg.f_low_hz = j.value("f_low_hz", cfg.f_low_hz);
  cfg.f_high_hz = j.value("f_high_hz", cfg.f_high_hz);
  if (j.contains("subband_shape")) {
    const std::string s = j.at("subband_shape").get<std::string>();
    if (s == "rectangular") {
      cfg.subband_shape = FilterShape::rectangular;
    } else if (s == "triangular") {
      cfg.subband_shape = FilterShape::triangular;
    } else {
      throw DataError("config: unknown subband shape '" + s + "'");
    }
  }
  cfg.gamma = j.value("gamma", cfg.gamma);
  cfg.smooth_window = j.value("smooth_window", cfg.smooth_window);
  cfg.angle_window = j.value("angle_window", cfg.angle_window);
  cfg.delta_window = j.value("delta_window", cfg.delta_window);
  cfg.lifter = j.value("lifter", cfg.lifter);
  cfg.exclude_sscf0 = j.value("exclude_sscf0", cfg.exclude_sscf0);
  return cfg;
}

}  // namespace detail

inline HarnessConfig parse_harness_config(const nlohmann::json& j) {
  HarnessConfig cfg;
  try {
    if (!j.contains("vowels") || !j.at("vowels").is_array() ||
        j.at("vowels").empty()) {
      throw DataError("config: 'vowels' must be a non-empty array");
    }
    for (const auto& jv : j.at("vowels")) {
      VowelSpec v;
      v.label = jv.at("label").get<std::string>();
      v.f0 = jv.at("f0").get<double>();
      v.amplitude = jv.value("amplitude", 1.0);
      for (const auto& jf : jv.at("formants")) {
        if (!jf.is_array() || jf.size() != 2) {
          throw DataError("config: vowel '" + v.label +
                          "' formants must be [center_hz, bandwidth_hz] pairs");
        }
        v.formants.push_back(
            Resonance{jf.at(0).get<double>(), jf.at(1).get<double>()});
      }
      cfg.vowels.push_back(std::move(v));
    }

    if (!j.contains("profiles") || !j.at("profiles").is_array() ||
        j.at("profiles").empty()) {
      throw DataError("config: 'profiles' must be a non-empty array");
    }
    for (const auto& jp : j.at("profiles")) {
      SpeakerProfile p;
      p.name = jp.at("name").get<std::string>();
      p.formant_scale = jp.value("formant_scale", 1.0);
      p.f0_scale = jp.value("f0_scale", 1.0);
      cfg.profiles.push_back(std::move(p));
    }

    for (const auto& jt : j.value("transitions", nlohmann::json::array())) {
      if (!jt.is_array() || jt.size() != 2) {
        throw DataError("config: transitions must be [from, to] label pairs");
      }
      cfg.transitions.emplace_back(jt.at(0).get<std::string>(),
                                   jt.at(1).get<std::string>());
    }

    cfg.settings.sample_rate = j.value("sample_rate", cfg.settings.sample_rate);
    cfg.settings.duration_s = j.value("duration_s", cfg.settings.duration_s);

    const nlohmann::json je = j.value("eval", nlohmann::json::object());
    cfg.feature_kinds = je.value(
        "feature_kinds",
        std::vector<std::string>{"angle", "polar", "polar_dd", "mfcc6",
                                 "mfcc6_dd", "mfcc13", "mfcc13_dd"});
    cfg.settings.tokens_per_class =
        je.value("tokens_per_class", cfg.settings.tokens_per_class);
    cfg.settings.seed = je.value("seed", cfg.settings.seed);
    cfg.settings.variation.formant_jitter =
        je.value("formant_jitter", cfg.settings.variation.formant_jitter);
    cfg.settings.variation.f0_jitter =
        je.value("f0_jitter", cfg.settings.variation.f0_jitter);
    cfg.settings.variation.formant_drift =
        je.value("formant_drift", cfg.settings.variation.formant_drift);
    cfg.settings.variation.noise_level =
        je.value("noise_level", cfg.settings.variation.noise_level);

    cfg.settings.extraction =
        detail::parse_extraction(j.value("extraction", nlohmann::json::object()));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("config: ") + e.what());
  }
  return cfg;
}

inline HarnessConfig load_harness_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open config file '" + path + "'");
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("config '" + path + "': " + e.what());
  }
  return parse_harness_config(j);
}

/// Two named profiles for the cross-speaker experiment. The first two
/// profiles in the config are used, in order.
inline ExperimentReport run_experiment(const HarnessConfig& cfg) {
  if (cfg.profiles.size() < 2) {
    throw ConfigError("eval needs at least two speaker profiles");
  }
  return cross_speaker_experiment(cfg.vowels, cfg.profiles[0], cfg.profiles[1],
                                  cfg.feature_kinds, cfg.settings);
}

inline nlohmann::json report_to_json(const ExperimentReport& report) {
  nlohmann::json j;
  j["seed"] = report.seed;
  j["tokens_per_class"] = report.tokens_per_class;
  j["num_vowels"] = report.num_vowels;
  nlohmann::json results = nlohmann::json::object();
  for (const auto& [kind, conditions] : report.results) {
    nlohmann::json per_kind = nlohmann::json::object();
    for (const auto& [condition, r] : conditions) {
      per_kind[condition] = {{"accuracy", r.accuracy()},
                             {"correct", r.correct},
                             {"total", r.total}};
    }
    results[kind] = per_kind;
  }
  j["results"] = results;
  return j;
}

}  // namespace sscf
