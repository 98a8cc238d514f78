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

#include <array>
#include <cinttypes>
#include <cstdio>
#include <cstdint>
#include <string>

#include "sscf/frontend.hpp"
#include "sscf/mfcc.hpp"
#include "sscf/subbands.hpp"
#include "sscf/trajectory.hpp"
#include "sscf/types.hpp"

namespace sscf {

/// All knobs of the extraction front end. The defaults are the reference
/// configuration used throughout: 25 ms Hamming frames every 10 ms,
/// pre-emphasis 0.97, 6 mel-equal subbands over the full band, 3-frame
/// smoothing, gamma 1, lifter 22, delta regression window 2.
struct ExtractionConfig {
  double frame_ms = 25.0;
  double hop_ms = 10.0;
  double preemphasis = 0.97;
  WindowKind window = WindowKind::hamming;
  int fft_size = 0;  // 0 = next power of two >= frame length
  int num_subbands = 6;
  double f_low_hz = 0.0;
  double f_high_hz = 0.0;  // 0 = Nyquist
  FilterShape subband_shape = FilterShape::rectangular;
  double gamma = 1.0;
  int smooth_window = 3;  // 1 disables smoothing
  int angle_window = 1;
  int delta_window = 2;
  double lifter = 22.0;
  bool exclude_sscf0 = false;
};

using Fingerprint = std::array<std::uint8_t, 16>;

namespace detail {

inline std::uint64_t fnv1a64(const std::string& s, std::uint64_t h) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline void append_kv(std::string& s, const char* key, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s=%.17g;", key, v);
  s += buf;
}

inline void append_kv(std::string& s, const char* key, int v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s=%d;", key, v);
  s += buf;
}

}  // namespace detail

/// Hashes every parameter that affects the requested extraction into a
/// 16-byte fingerprint. Parameters that cannot influence the output of the
/// given feature kind (for example gamma under mfcc) are left out, so the
/// fingerprint changes exactly when the produced features can change.
inline Fingerprint config_fingerprint(const ExtractionConfig& cfg,
                                      FeatureKind kind, int mfcc_ceps = 0,
                                      bool deltas = false) {
  std::string canon = "kind=" + feature_kind_name(kind) + ";";
  detail::append_kv(canon, "frame_ms", cfg.frame_ms);
  detail::append_kv(canon, "hop_ms", cfg.hop_ms);
  detail::append_kv(canon, "preemphasis", cfg.preemphasis);
  detail::append_kv(canon, "window", static_cast<int>(cfg.window));
  detail::append_kv(canon, "fft_size", cfg.fft_size);
  if (kind == FeatureKind::mfcc) {
    detail::append_kv(canon, "mfcc_ceps", mfcc_ceps);
    detail::append_kv(canon, "lifter", cfg.lifter);
  } else {
    detail::append_kv(canon, "num_subbands", cfg.num_subbands);
    detail::append_kv(canon, "f_low_hz", cfg.f_low_hz);
    detail::append_kv(canon, "f_high_hz", cfg.f_high_hz);
    detail::append_kv(canon, "subband_shape", static_cast<int>(cfg.subband_shape));
    detail::append_kv(canon, "gamma", cfg.gamma);
    detail::append_kv(canon, "smooth_window", cfg.smooth_window);
    if (kind == FeatureKind::angle) {
      detail::append_kv(canon, "angle_window", cfg.angle_window);
    }
    if (kind == FeatureKind::angle || kind == FeatureKind::polar) {
      detail::append_kv(canon, "exclude_sscf0", cfg.exclude_sscf0 ? 1 : 0);
    }
  }
  detail::append_kv(canon, "deltas", deltas ? 1 : 0);
  if (deltas) {
    detail::append_kv(canon, "delta_window", cfg.delta_window);
  }

  const std::uint64_t h0 = detail::fnv1a64(canon, 0xcbf29ce484222325ULL);
  const std::uint64_t h1 = detail::fnv1a64(canon, 0x9ae16a3b2f90404fULL);
  Fingerprint fp;
  for (int i = 0; i < 8; ++i) {
    fp[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(h0 >> (8 * i));
    fp[static_cast<std::size_t>(i) + 8] = static_cast<std::uint8_t>(h1 >> (8 * i));
  }
  return fp;
}

inline std::string fingerprint_hex(const Fingerprint& fp) {
  std::string s;
  char buf[3];
  for (std::uint8_t b : fp) {
    std::snprintf(buf, sizeof(buf), "%02x", b);
    s += buf;
  }
  return s;
}

/// Pre-emphasis, framing, windowing, and short-time power spectra in one go.
inline PowerSpectrogram compute_spectrogram(const AudioBuffer& audio,
                                            const ExtractionConfig& cfg) {
  const AudioBuffer emphasized = pre_emphasize(audio, cfg.preemphasis);
  const FrameSequence frames =
      apply_window(frame_signal(emphasized, cfg.frame_ms, cfg.hop_ms), cfg.window);
  return power_spectrum(frames, cfg.fft_size);
}

/// Full front end from audio to a smoothed subband centroid track.
inline SscfTrack extract_sscf_track(const AudioBuffer& audio,
                                    const ExtractionConfig& cfg) {
  const PowerSpectrogram spec = compute_spectrogram(audio, cfg);
  const double f_high = cfg.f_high_hz > 0.0 ? cfg.f_high_hz : spec.nyquist_hz();
  const auto bands = build_subbands(cfg.num_subbands, cfg.f_low_hz, f_high,
                                    cfg.subband_shape, cfg.gamma);
  SscfTrack track = compute_sscf(spec, bands);
  if (cfg.smooth_window > 1) {
    track = smooth_track(track, cfg.smooth_window);
  }
  return track;
}

/// One requested feature stream: base kind, mfcc width, derivative append.
/// Named "angle", "polar", "sscf", "mfcc6", "mfcc13", with an optional
/// "_dd" suffix for the delta / delta-delta variants.
struct FeatureRequest {
  FeatureKind kind = FeatureKind::sscf;
  int mfcc_ceps = 13;
  bool deltas = false;
};

inline FeatureRequest parse_feature_request(const std::string& name) {
  FeatureRequest req;
  std::string base = name;
  if (base.size() > 3 && base.substr(base.size() - 3) == "_dd") {
    req.deltas = true;
    base = base.substr(0, base.size() - 3);
  }
  if (base.rfind("mfcc", 0) == 0 && base.size() > 4) {
    req.kind = FeatureKind::mfcc;
    try {
      req.mfcc_ceps = std::stoi(base.substr(4));
    } catch (const std::exception&) {
      throw DataError("unknown feature name '" + name + "'");
    }
    if (req.mfcc_ceps < 1) {
      throw DataError("unknown feature name '" + name + "'");
    }
  } else if (base == "sscf" || base == "angle" || base == "polar") {
    req.kind = feature_kind_from_name(base);
  } else {
    throw DataError("unknown feature name '" + name + "'");
  }
  return req;
}

inline std::string feature_request_name(const FeatureRequest& req) {
  std::string name = req.kind == FeatureKind::mfcc
                         ? "mfcc" + std::to_string(req.mfcc_ceps)
                         : feature_kind_name(req.kind);
  if (req.deltas) name += "_dd";
  return name;
}

/// Extracts one feature kind from audio. mfcc_ceps selects the cepstrum
/// width (and the matching filterbank size) for the mfcc kind and is
/// ignored otherwise.
inline FeatureMatrix extract_features(const AudioBuffer& audio,
                                      const ExtractionConfig& cfg,
                                      FeatureKind kind, int mfcc_ceps = 13,
                                      bool deltas = false) {
  FeatureMatrix feat;
  if (kind == FeatureKind::mfcc) {
    const PowerSpectrogram spec = compute_spectrogram(audio, cfg);
    const double f_high = cfg.f_high_hz > 0.0 ? cfg.f_high_hz : spec.nyquist_hz();
    const MelFilterBank bank = build_mel_filterbank(
        mfcc_ceps, spec.fft_size, spec.sample_rate, cfg.f_low_hz, f_high);
    feat = compute_mfcc(spec, bank, mfcc_ceps, cfg.lifter);
  } else {
    const SscfTrack track = extract_sscf_track(audio, cfg);
    switch (kind) {
      case FeatureKind::sscf:
        feat.kind = FeatureKind::sscf;
        feat.values = track.values;
        feat.frame_hop_ms = track.frame_hop_ms;
        feat.silence = track.silence;
        break;
      case FeatureKind::angle:
        feat = transition_angles(track, cfg.angle_window, cfg.exclude_sscf0);
        break;
      case FeatureKind::polar:
        feat = polar_coordinates(track, cfg.exclude_sscf0);
        break;
      default:
        throw ConfigError("extract_features: unhandled feature kind");
    }
  }
  if (deltas) {
    feat = append_deltas(feat, cfg.delta_window);
  }
  return feat;
}

inline FeatureMatrix extract_features(const AudioBuffer& audio,
                                      const ExtractionConfig& cfg,
                                      const FeatureRequest& req) {
  return extract_features(audio, cfg, req.kind, req.mfcc_ceps, req.deltas);
}

inline Fingerprint config_fingerprint(const ExtractionConfig& cfg,
                                      const FeatureRequest& req) {
  return config_fingerprint(cfg, req.kind, req.mfcc_ceps, req.deltas);
}

}  // namespace sscf
