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

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sscf/pipeline.hpp"
#include "sscf/synth.hpp"
#include "sscf/types.hpp"

namespace sscf {

/// A bag of feature frames sharing one class label.
struct LabeledFrames {
  std::string label;
  Eigen::MatrixXd frames;  // num_frames x dims
};

struct ConditionResult {
  long correct = 0;
  long total = 0;

  double accuracy() const { return total > 0 ? static_cast<double>(correct) / total : 0.0; }
};

/// Nearest-class-centroid classifier on train-standardized dimensions.
struct CentroidModel {
  Eigen::VectorXd mean;
  Eigen::VectorXd scale;  // per-dimension standard deviation, floored
  std::map<std::string, Eigen::VectorXd> centroids;  // standardized space
};

/// Fits standardization statistics and class centroids on training frames
/// only. Classes with zero training frames are rejected.
inline CentroidModel fit_centroid_model(const std::vector<LabeledFrames>& train) {
  if (train.empty()) {
    throw ConfigError("fit_centroid_model: no training data");
  }
  const Eigen::Index dims = train.front().frames.cols();
  long total = 0;
  for (const LabeledFrames& set : train) {
    if (set.frames.cols() != dims) {
      throw ConfigError("fit_centroid_model: inconsistent feature widths " +
                        std::to_string(set.frames.cols()) + " vs " +
                        std::to_string(dims));
    }
    total += set.frames.rows();
  }
  if (total == 0) {
    throw DataError("fit_centroid_model: training set has no frames");
  }

  CentroidModel model;
  model.mean = Eigen::VectorXd::Zero(dims);
  for (const LabeledFrames& set : train) {
    if (set.frames.rows() > 0) {
      model.mean += set.frames.colwise().sum().transpose();
    }
  }
  model.mean /= static_cast<double>(total);

  Eigen::VectorXd var = Eigen::VectorXd::Zero(dims);
  for (const LabeledFrames& set : train) {
    for (Eigen::Index t = 0; t < set.frames.rows(); ++t) {
      var += (set.frames.row(t).transpose() - model.mean).array().square().matrix();
    }
  }
  var /= static_cast<double>(total);
  model.scale = var.array().sqrt().max(0.0).matrix();
  for (Eigen::Index d = 0; d < dims; ++d) {
    if (model.scale[d] < 1e-12) model.scale[d] = 1.0;  // uninformative dim
  }

  std::map<std::string, std::pair<Eigen::VectorXd, long>> sums;
  for (const LabeledFrames& set : train) {
    auto& entry = sums[set.label];
    if (entry.second == 0) entry.first = Eigen::VectorXd::Zero(dims);
    for (Eigen::Index t = 0; t < set.frames.rows(); ++t) {
      entry.first +=
          ((set.frames.row(t).transpose() - model.mean).array() / model.scale.array())
              .matrix();
    }
    entry.second += set.frames.rows();
  }
  for (const auto& [label, entry] : sums) {
    if (entry.second == 0) {
      throw DataError("fit_centroid_model: class '" + label +
                      "' has zero training frames");
    }
    model.centroids[label] = entry.first / static_cast<double>(entry.second);
  }
  if (model.centroids.size() < 2) {
    throw ConfigError("fit_centroid_model: need at least 2 classes, got " +
                      std::to_string(model.centroids.size()));
  }
  return model;
}

/// Assigns every test frame to the nearest class centroid. Ties resolve to
/// the lexicographically smallest label.
inline ConditionResult evaluate_model(const CentroidModel& model,
                                      const std::vector<LabeledFrames>& test) {
  ConditionResult result;
  for (const LabeledFrames& set : test) {
    if (set.frames.rows() > 0 && !model.centroids.count(set.label)) {
      throw DataError("evaluate_model: class '" + set.label +
                      "' has zero training frames");
    }
    for (Eigen::Index t = 0; t < set.frames.rows(); ++t) {
      const Eigen::VectorXd z =
          ((set.frames.row(t).transpose() - model.mean).array() / model.scale.array())
              .matrix();
      double best = std::numeric_limits<double>::infinity();
      const std::string* best_label = nullptr;
      for (const auto& [label, centroid] : model.centroids) {
        const double d = (z - centroid).squaredNorm();
        if (d < best) {
          best = d;
          best_label = &label;
        }
      }
      result.total += 1;
      if (best_label && *best_label == set.label) result.correct += 1;
    }
  }
  return result;
}

inline ConditionResult classify_frames(const std::vector<LabeledFrames>& train,
                                       const std::vector<LabeledFrames>& test) {
  return evaluate_model(fit_centroid_model(train), test);
}

/// Token-level randomization applied on top of the base vowel targets.
struct TokenVariation {
  double formant_jitter = 0.03;  // relative, uniform per formant per token
  double f0_jitter = 0.05;       // relative, uniform per token
  double formant_drift = 0.02;   // relative glide from -d to +d within a token
  double noise_level = 0.0;      // additive noise relative to the 0.5 peak
};

/// Everything the cross-speaker experiment needs besides vowels, profiles,
/// and the feature kind list.
struct EvalSettings {
  int sample_rate = 16000;
  double duration_s = 0.4;
  int tokens_per_class = 8;
  std::uint64_t seed = 12345;
  TokenVariation variation;
  ExtractionConfig extraction;
};

/// Accuracies keyed by feature kind, then by condition name.
struct ExperimentReport {
  std::map<std::string, std::map<std::string, ConditionResult>> results;
  std::uint64_t seed = 0;
  int tokens_per_class = 0;
  int num_vowels = 0;
};

namespace detail {

inline std::mt19937_64 token_rng(std::uint64_t seed, int profile, int vowel,
                                 int token) {
  std::seed_seq seq{static_cast<std::uint64_t>(profile),
                    static_cast<std::uint64_t>(vowel),
                    static_cast<std::uint64_t>(token), seed};
  return std::mt19937_64(seq);
}

}  // namespace detail

/// One randomized instance of a vowel for a given speaker: formant centers
/// and f0 jittered per token, plus a slow linear formant glide across the
/// token so the track is not numerically frozen.
inline AudioBuffer synthesize_token(const VowelSpec& vowel,
                                    const SpeakerProfile& profile,
                                    const EvalSettings& settings,
                                    std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  VowelSpec tok = vowel;
  for (Resonance& r : tok.formants) {
    r.center_hz *= 1.0 + settings.variation.formant_jitter * unit(rng);
  }
  tok.f0 *= 1.0 + settings.variation.f0_jitter * unit(rng);

  AudioBuffer audio;
  const double drift = settings.variation.formant_drift;
  if (drift > 0.0) {
    VowelSpec lo = tok;
    VowelSpec hi = tok;
    for (Resonance& r : lo.formants) r.center_hz *= 1.0 - drift;
    for (Resonance& r : hi.formants) r.center_hz *= 1.0 + drift;
    audio = synthesize_transition(lo, hi, profile, settings.duration_s,
                                  settings.sample_rate);
  } else {
    audio = synthesize_vowel(tok, profile, settings.duration_s,
                             settings.sample_rate);
  }
  if (settings.variation.noise_level > 0.0) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double amp = 0.5 * settings.variation.noise_level;
    for (Eigen::Index i = 0; i < audio.samples.size(); ++i) {
      audio.samples[i] += amp * gauss(rng);
    }
  }
  return audio;
}

namespace detail {

/// Feature frames for one synthesized token, silence frames dropped.
inline Eigen::MatrixXd token_frames(const AudioBuffer& audio,
                                    const ExtractionConfig& extraction,
                                    const FeatureRequest& req) {
  FeatureMatrix feat = extract_features(audio, extraction, req);
  if (feat.silence.size() == 0 || !feat.silence.any()) {
    return feat.values;
  }
  const Eigen::Index kept = feat.num_frames() - feat.silence.count();
  Eigen::MatrixXd out(kept, feat.dims());
  Eigen::Index row = 0;
  for (Eigen::Index t = 0; t < feat.num_frames(); ++t) {
    if (!feat.silence[t]) out.row(row++) = feat.values.row(t);
  }
  return out;
}

}  // namespace detail

/// Trains and tests the centroid classifier for every requested feature
/// kind under a matched condition (pooled speakers, disjoint token split)
/// and both cross-speaker conditions (train on one profile, test on the
/// other). The "cross" entry pools both directions. Deterministic for a
/// fixed seed.
inline ExperimentReport cross_speaker_experiment(
    const std::vector<VowelSpec>& vowels, const SpeakerProfile& profile_a,
    const SpeakerProfile& profile_b, const std::vector<std::string>& kinds,
    const EvalSettings& settings) {
  if (vowels.size() < 3) {
    throw ConfigError("cross_speaker_experiment: need at least 3 vowels");
  }
  if (settings.tokens_per_class < 2) {
    throw ConfigError(
        "cross_speaker_experiment: need at least 2 tokens per class for the "
        "matched split");
  }
  if (profile_a.name == profile_b.name) {
    throw ConfigError("cross_speaker_experiment: profiles need distinct names");
  }
  if (kinds.empty()) {
    throw ConfigError("cross_speaker_experiment: no feature kinds requested");
  }
  std::set<std::string> label_set;
  for (const VowelSpec& v : vowels) {
    if (!label_set.insert(v.label).second) {
      throw ConfigError("cross_speaker_experiment: duplicate vowel label '" +
                        v.label + "'");
    }
  }

  std::vector<FeatureRequest> requests;
  requests.reserve(kinds.size());
  for (const std::string& name : kinds) {
    requests.push_back(parse_feature_request(name));
  }

  const SpeakerProfile* profiles[2] = {&profile_a, &profile_b};

  // frames[kind][profile][vowel][token]
  std::vector<std::vector<std::vector<std::vector<Eigen::MatrixXd>>>> frames(
      kinds.size());
  for (auto& per_profile : frames) {
    per_profile.assign(2, std::vector<std::vector<Eigen::MatrixXd>>(
                              vowels.size(),
                              std::vector<Eigen::MatrixXd>(
                                  static_cast<std::size_t>(settings.tokens_per_class))));
  }

  for (int p = 0; p < 2; ++p) {
    for (std::size_t v = 0; v < vowels.size(); ++v) {
      for (int t = 0; t < settings.tokens_per_class; ++t) {
        std::mt19937_64 rng =
            detail::token_rng(settings.seed, p, static_cast<int>(v), t);
        const AudioBuffer audio =
            synthesize_token(vowels[v], *profiles[p], settings, rng);
        for (std::size_t k = 0; k < requests.size(); ++k) {
          frames[k][static_cast<std::size_t>(p)][v][static_cast<std::size_t>(t)] =
              detail::token_frames(audio, settings.extraction, requests[k]);
        }
      }
    }
  }

  auto collect = [&](std::size_t kind, int profile, std::size_t vowel,
                     bool even_tokens, bool odd_tokens) {
    LabeledFrames set;
    set.label = vowels[vowel].label;
    Eigen::Index total = 0;
    std::vector<const Eigen::MatrixXd*> parts;
    for (int t = 0; t < settings.tokens_per_class; ++t) {
      const bool even = (t % 2 == 0);
      if ((even && !even_tokens) || (!even && !odd_tokens)) continue;
      const Eigen::MatrixXd& m =
          frames[kind][static_cast<std::size_t>(profile)][vowel]
                [static_cast<std::size_t>(t)];
      parts.push_back(&m);
      total += m.rows();
    }
    const Eigen::Index dims = parts.empty() ? 0 : parts.front()->cols();
    set.frames.resize(total, dims);
    Eigen::Index row = 0;
    for (const Eigen::MatrixXd* m : parts) {
      set.frames.middleRows(row, m->rows()) = *m;
      row += m->rows();
    }
    return set;
  };

  ExperimentReport report;
  report.seed = settings.seed;
  report.tokens_per_class = settings.tokens_per_class;
  report.num_vowels = static_cast<int>(vowels.size());

  for (std::size_t k = 0; k < requests.size(); ++k) {
    const std::string kind_name = feature_request_name(requests[k]);

    std::vector<LabeledFrames> matched_train, matched_test;
    std::vector<LabeledFrames> all_a, all_b;
    for (std::size_t v = 0; v < vowels.size(); ++v) {
      for (int p = 0; p < 2; ++p) {
        matched_train.push_back(collect(k, p, v, true, false));
        matched_test.push_back(collect(k, p, v, false, true));
      }
      all_a.push_back(collect(k, 0, v, true, true));
      all_b.push_back(collect(k, 1, v, true, true));
    }

    auto& entry = report.results[kind_name];
    entry["matched"] = classify_frames(matched_train, matched_test);
    const ConditionResult ab = classify_frames(all_a, all_b);
    const ConditionResult ba = classify_frames(all_b, all_a);
    entry["cross_" + profile_a.name] = ab;
    entry["cross_" + profile_b.name] = ba;
    entry["cross"] =
        ConditionResult{ab.correct + ba.correct, ab.total + ba.total};
  }
  return report;
}

}  // namespace sscf
