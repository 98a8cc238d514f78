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

#include <cmath>
#include <string>
#include <vector>

#include "sscf/mel.hpp"
#include "sscf/types.hpp"

namespace sscf {

/// Splits [f_low, f_high] into `num` subbands of equal mel width.
/// Consecutive bands share their boundary, so rectangular bands partition
/// the range.
inline std::vector<SubbandSpec> build_subbands(int num, double f_low,
                                               double f_high,
                                               FilterShape shape,
                                               double gamma) {
  if (num < 1) {
    throw ConfigError("build_subbands: need at least one subband");
  }
  if (f_low < 0.0 || f_low >= f_high) {
    throw ConfigError("build_subbands: invalid frequency range [" +
                      std::to_string(f_low) + ", " + std::to_string(f_high) +
                      "]");
  }
  if (gamma < 0.0) {
    throw ConfigError("build_subbands: gamma must be non-negative");
  }
  const double mel_low = hz_to_mel(f_low);
  const double mel_high = hz_to_mel(f_high);
  const double mel_step = (mel_high - mel_low) / num;

  std::vector<double> edges(static_cast<std::size_t>(num) + 1);
  edges.front() = f_low;
  edges.back() = f_high;
  for (int m = 1; m < num; ++m) {
    edges[static_cast<std::size_t>(m)] = mel_to_hz(mel_low + m * mel_step);
  }

  std::vector<SubbandSpec> bands(static_cast<std::size_t>(num));
  for (int m = 0; m < num; ++m) {
    bands[static_cast<std::size_t>(m)] = SubbandSpec{
        m, edges[static_cast<std::size_t>(m)],
        edges[static_cast<std::size_t>(m) + 1], shape, gamma};
  }
  return bands;
}

namespace detail {

/// Triangular subband weight: peaks at the band's mel midpoint, zero at the
/// band edges, linear in mel in between.
inline double subband_weight(const SubbandSpec& band, double f_hz) {
  if (band.shape == FilterShape::rectangular) {
    return 1.0;
  }
  const double mel_low = hz_to_mel(band.low_hz);
  const double mel_high = hz_to_mel(band.high_hz);
  const double mel_mid = 0.5 * (mel_low + mel_high);
  const double half = 0.5 * (mel_high - mel_low);
  const double d = std::abs(hz_to_mel(f_hz) - mel_mid);
  return d >= half ? 0.0 : 1.0 - d / half;
}

struct BandBins {
  Eigen::Index first = 0;  // first bin index in the band
  Eigen::VectorXd weight;          // w(f) per bin
  Eigen::VectorXd freq_weight;     // f * w(f) per bin
  double mel_midpoint_hz = 0.0;    // substitute value for silent frames
};

/// Assigns each DFT bin to at most one band by its center frequency:
/// lower edge inclusive, upper edge exclusive, last band upper inclusive.
inline std::vector<BandBins> assign_bins(const PowerSpectrogram& spectrum,
                                         const std::vector<SubbandSpec>& bands) {
  std::vector<BandBins> out(bands.size());
  for (std::size_t m = 0; m < bands.size(); ++m) {
    const SubbandSpec& band = bands[m];
    if (band.high_hz > spectrum.nyquist_hz() + 1e-9) {
      throw ConfigError("compute_sscf: subband " + std::to_string(band.index) +
                        " upper bound " + std::to_string(band.high_hz) +
                        " Hz exceeds Nyquist " +
                        std::to_string(spectrum.nyquist_hz()) + " Hz");
    }
    const bool last = (m + 1 == bands.size());
    Eigen::Index first = -1;
    std::vector<double> w, fw;
    for (Eigen::Index k = 0; k < spectrum.num_bins(); ++k) {
      const double f = k * spectrum.bin_hz;
      const bool in_band =
          f >= band.low_hz && (f < band.high_hz || (last && f <= band.high_hz));
      if (!in_band) {
        if (first >= 0) break;  // bands are contiguous in frequency
        continue;
      }
      if (first < 0) first = k;
      const double weight = subband_weight(band, f);
      w.push_back(weight);
      fw.push_back(f * weight);
    }
    if (first < 0) {
      throw ConfigError("compute_sscf: subband " + std::to_string(band.index) +
                        " [" + std::to_string(band.low_hz) + ", " +
                        std::to_string(band.high_hz) +
                        "] Hz contains no spectrum bins");
    }
    out[m].first = first;
    out[m].weight = Eigen::Map<Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
    out[m].freq_weight =
        Eigen::Map<Eigen::VectorXd>(fw.data(), static_cast<Eigen::Index>(fw.size()));
    out[m].mel_midpoint_hz =
        mel_to_hz(0.5 * (hz_to_mel(band.low_hz) + hz_to_mel(band.high_hz)));
  }
  return out;
}

}  // namespace detail

/// Per frame and band, the weighted mean frequency
///   sum(f * w(f) * P(f)^gamma) / sum(w(f) * P(f)^gamma)
/// over the bins assigned to the band. Frames where a band's weighted power
/// sums to zero get that band's mel midpoint and are flagged silent.
inline SscfTrack compute_sscf(const PowerSpectrogram& spectrum,
                              const std::vector<SubbandSpec>& subbands) {
  if (subbands.empty()) {
    throw ConfigError("compute_sscf: no subbands given");
  }
  const std::vector<detail::BandBins> bins = detail::assign_bins(spectrum, subbands);

  SscfTrack track;
  track.subbands = subbands;
  track.frame_hop_ms = spectrum.hop_ms;
  track.values.resize(spectrum.num_frames(), static_cast<Eigen::Index>(subbands.size()));
  track.silence = BoolArray::Constant(spectrum.num_frames(), false);

  for (Eigen::Index t = 0; t < spectrum.num_frames(); ++t) {
    for (std::size_t m = 0; m < subbands.size(); ++m) {
      const detail::BandBins& b = bins[m];
      const double gamma = subbands[m].gamma;
      Eigen::ArrayXd p =
          spectrum.power.row(t).segment(b.first, b.weight.size()).transpose().array();
      if (gamma != 1.0) {
        p = p.pow(gamma);
      }
      const double den = (b.weight.array() * p).sum();
      if (den > 0.0) {
        const double num = (b.freq_weight.array() * p).sum();
        track.values(t, static_cast<Eigen::Index>(m)) = num / den;
      } else {
        track.values(t, static_cast<Eigen::Index>(m)) = b.mel_midpoint_hz;
        track.silence[t] = true;
      }
    }
  }
  return track;
}

/// Centered moving average over an odd window, applied per subband.
/// At track edges the window shrinks to the available frames.
inline SscfTrack smooth_track(const SscfTrack& track, int window = 3) {
  if (window < 1 || window % 2 == 0) {
    throw ConfigError("smooth_track: window must be odd and positive, got " +
                      std::to_string(window));
  }
  SscfTrack out = track;
  if (window == 1) {
    return out;
  }
  const Eigen::Index half = window / 2;
  const Eigen::Index frames = track.num_frames();
  for (Eigen::Index t = 0; t < frames; ++t) {
    const Eigen::Index lo = std::max<Eigen::Index>(0, t - half);
    const Eigen::Index hi = std::min<Eigen::Index>(frames - 1, t + half);
    out.values.row(t) =
        track.values.middleRows(lo, hi - lo + 1).colwise().mean();
  }
  return out;
}

}  // namespace sscf
