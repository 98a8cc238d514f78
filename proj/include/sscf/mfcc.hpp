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

#include "sscf/mel.hpp"
#include "sscf/types.hpp"

namespace sscf {

/// Bank of triangular filters with centers equally spaced on the mel scale.
struct MelFilterBank {
  int num_filters = 0;
  Eigen::MatrixXd weights;  // num_filters x num_bins
  double f_low = 0.0;
  double f_high = 0.0;
};

/// Floor applied to filterbank energies before the log.
inline constexpr double kLogEnergyFloor = 1e-10;

/// Builds `num_filters` triangular filters between f_low and f_high.
/// The num_filters + 2 boundary points are equally spaced in mel; each
/// filter rises linearly in mel from one point to the next and falls to the
/// one after, so adjacent supports overlap exactly between consecutive
/// points. Weights are evaluated at each DFT bin's center frequency.
inline MelFilterBank build_mel_filterbank(int num_filters, int fft_size,
                                          int sample_rate, double f_low,
                                          double f_high) {
  if (num_filters < 1) {
    throw ConfigError("build_mel_filterbank: need at least one filter");
  }
  if (f_low < 0.0 || f_low >= f_high || f_high > 0.5 * sample_rate) {
    throw ConfigError("build_mel_filterbank: invalid frequency range [" +
                      std::to_string(f_low) + ", " + std::to_string(f_high) +
                      "] at sample rate " + std::to_string(sample_rate));
  }
  const Eigen::Index bins = fft_size / 2 + 1;
  const double bin_hz = static_cast<double>(sample_rate) / fft_size;
  const double mel_low = hz_to_mel(f_low);
  const double mel_high = hz_to_mel(f_high);
  const double step = (mel_high - mel_low) / (num_filters + 1);

  MelFilterBank bank;
  bank.num_filters = num_filters;
  bank.f_low = f_low;
  bank.f_high = f_high;
  bank.weights = Eigen::MatrixXd::Zero(num_filters, bins);

  for (int m = 0; m < num_filters; ++m) {
    const double left = mel_low + m * step;
    const double center = left + step;
    const double right = center + step;
    for (Eigen::Index k = 0; k < bins; ++k) {
      const double mel = hz_to_mel(k * bin_hz);
      double w = 0.0;
      if (mel > left && mel < right) {
        w = mel <= center ? (mel - left) / step : (right - mel) / step;
      }
      bank.weights(m, k) = w;
    }
    if (bank.weights.row(m).sum() <= 0.0) {
      throw ConfigError("build_mel_filterbank: filter " + std::to_string(m) +
                        " covers no spectrum bins; fft_size " +
                        std::to_string(fft_size) + " is too coarse for " +
                        std::to_string(num_filters) + " filters");
    }
  }
  return bank;
}

namespace detail {

/// Orthonormal DCT-II matrix (num_ceps x num_filters).
inline Eigen::MatrixXd dct_matrix(int num_ceps, int num_filters) {
  Eigen::MatrixXd dct(num_ceps, num_filters);
  const double norm0 = std::sqrt(1.0 / num_filters);
  const double norm = std::sqrt(2.0 / num_filters);
  for (int k = 0; k < num_ceps; ++k) {
    for (int j = 0; j < num_filters; ++j) {
      dct(k, j) = (k == 0 ? norm0 : norm) *
                  std::cos(EIGEN_PI * k * (j + 0.5) / num_filters);
    }
  }
  return dct;
}

/// c_n *= 1 + (L/2) * sin(pi * n / L)
inline Eigen::VectorXd lifter_coeffs(int num_ceps, double lifter) {
  Eigen::VectorXd c(num_ceps);
  for (int n = 0; n < num_ceps; ++n) {
    c[n] = 1.0 + 0.5 * lifter * std::sin(EIGEN_PI * n / lifter);
  }
  return c;
}

}  // namespace detail

/// Mel-frequency cepstra: filterbank energies, floored log, orthonormal
/// DCT-II, then sinusoidal liftering (skipped when lifter is 0). c_0 is kept.
inline FeatureMatrix compute_mfcc(const PowerSpectrogram& spectrum,
                                  const MelFilterBank& bank, int num_ceps,
                                  double lifter) {
  if (num_ceps < 1 || num_ceps > bank.num_filters) {
    throw ConfigError("compute_mfcc: num_ceps " + std::to_string(num_ceps) +
                      " must be in [1, " + std::to_string(bank.num_filters) +
                      "]");
  }
  if (lifter < 0.0) {
    throw ConfigError("compute_mfcc: lifter must be non-negative");
  }
  if (bank.weights.cols() != spectrum.num_bins()) {
    throw ConfigError("compute_mfcc: filterbank built for " +
                      std::to_string(bank.weights.cols()) +
                      " bins, spectrum has " +
                      std::to_string(spectrum.num_bins()));
  }

  // energies: num_frames x num_filters
  Eigen::MatrixXd energies = spectrum.power * bank.weights.transpose();
  Eigen::MatrixXd log_energies =
      energies.array().max(kLogEnergyFloor).log().matrix();

  const Eigen::MatrixXd dct = detail::dct_matrix(num_ceps, bank.num_filters);

  FeatureMatrix out;
  out.kind = FeatureKind::mfcc;
  out.frame_hop_ms = spectrum.hop_ms;
  out.values = log_energies * dct.transpose();
  if (lifter > 0.0) {
    const Eigen::VectorXd lc = detail::lifter_coeffs(num_ceps, lifter);
    out.values = out.values.array().rowwise() * lc.transpose().array();
  }
  return out;
}

}  // namespace sscf
