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

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "sscf/error.hpp"

namespace sscf {

using BoolArray = Eigen::Array<bool, Eigen::Dynamic, 1>;
using BoolMatrix = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Mono audio signal. Samples are nominally in [-1, 1].
struct AudioBuffer {
  Eigen::VectorXd samples;
  int sample_rate = 0;

  Eigen::Index size() const { return samples.size(); }
  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

enum class WindowKind : std::uint8_t { rectangular, hamming };

/// Short-time frames cut from a signal, one frame per row.
struct FrameSequence {
  Eigen::MatrixXd frames;  // num_frames x frame_length
  Eigen::Index frame_length = 0;
  Eigen::Index hop = 0;  // samples between frame starts
  int sample_rate = 0;

  Eigen::Index num_frames() const { return frames.rows(); }
  double hop_ms() const { return 1000.0 * hop / sample_rate; }
};

/// One-sided short-time power spectra, one frame per row.
/// Columns are DFT bins 0..fft_size/2 with center frequency bin * bin_hz.
struct PowerSpectrogram {
  Eigen::MatrixXd power;  // num_frames x (fft_size/2 + 1)
  double bin_hz = 0.0;
  int fft_size = 0;
  int sample_rate = 0;
  double hop_ms = 0.0;

  Eigen::Index num_frames() const { return power.rows(); }
  Eigen::Index num_bins() const { return power.cols(); }
  double nyquist_hz() const { return 0.5 * sample_rate; }
};

enum class FilterShape : std::uint8_t { rectangular, triangular };

/// One spectral subband [low_hz, high_hz) with its weighting shape and the
/// exponent applied to the power spectrum inside the centroid.
struct SubbandSpec {
  int index = 0;
  double low_hz = 0.0;
  double high_hz = 0.0;
  FilterShape shape = FilterShape::rectangular;
  double gamma = 1.0;
};

/// Per-frame subband centroid frequencies in Hz, one frame per row and one
/// subband per column. A frame is flagged silent when at least one subband
/// had zero weighted power; such entries hold the subband's mel midpoint.
struct SscfTrack {
  Eigen::MatrixXd values;  // num_frames x num_bands, Hz
  std::vector<SubbandSpec> subbands;
  double frame_hop_ms = 0.0;
  BoolArray silence;  // num_frames

  Eigen::Index num_frames() const { return values.rows(); }
  int num_bands() const { return static_cast<int>(values.cols()); }
};

enum class FeatureKind : std::uint8_t { sscf = 0, angle = 1, polar = 2, mfcc = 3 };

inline std::string feature_kind_name(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::sscf:
      return "sscf";
    case FeatureKind::angle:
      return "angle";
    case FeatureKind::polar:
      return "polar";
    case FeatureKind::mfcc:
      return "mfcc";
  }
  throw ConfigError("unknown feature kind id " +
                    std::to_string(static_cast<int>(kind)));
}

inline FeatureKind feature_kind_from_name(const std::string& name) {
  if (name == "sscf") return FeatureKind::sscf;
  if (name == "angle") return FeatureKind::angle;
  if (name == "polar") return FeatureKind::polar;
  if (name == "mfcc") return FeatureKind::mfcc;
  throw DataError("unknown feature kind name '" + name + "'");
}

/// Frames x dimensions feature sequence of a named kind.
/// delta_order 2 means first and second derivatives are appended and the
/// dimension count is three times the static width.
///
/// degenerate / silence are in-memory flags and are not serialized.
struct FeatureMatrix {
  Eigen::MatrixXd values;  // num_frames x dims
  FeatureKind kind = FeatureKind::sscf;
  int delta_order = 0;  // 0 or 2
  double frame_hop_ms = 0.0;
  BoolMatrix degenerate;  // angle kind: num_frames x num_planes, else empty
  BoolArray silence;      // copied from the source track when applicable

  Eigen::Index num_frames() const { return values.rows(); }
  Eigen::Index dims() const { return values.cols(); }
};

}  // namespace sscf
