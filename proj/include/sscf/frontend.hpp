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

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "sscf/types.hpp"

namespace sscf {

/// First-order high-pass: y[0] = x[0], y[n] = x[n] - coeff * x[n-1].
inline AudioBuffer pre_emphasize(const AudioBuffer& audio, double coeff) {
  if (coeff < 0.0 || coeff >= 1.0) {
    throw ConfigError("pre_emphasize: coefficient " + std::to_string(coeff) +
                      " outside [0, 1)");
  }
  if (audio.samples.size() == 0) {
    throw DataError("pre_emphasize: empty audio buffer");
  }
  AudioBuffer out;
  out.sample_rate = audio.sample_rate;
  const Eigen::Index n = audio.samples.size();
  out.samples.resize(n);
  out.samples[0] = audio.samples[0];
  out.samples.tail(n - 1) =
      audio.samples.tail(n - 1) - coeff * audio.samples.head(n - 1);
  return out;
}

/// Cuts the signal into frames of frame_ms every hop_ms. Lengths are rounded
/// to the nearest sample; trailing samples that do not fill a frame are
/// dropped.
inline FrameSequence frame_signal(const AudioBuffer& audio, double frame_ms,
                                  double hop_ms) {
  if (frame_ms <= 0.0 || hop_ms <= 0.0) {
    throw ConfigError("frame_signal: frame_ms and hop_ms must be > 0");
  }
  if (audio.sample_rate <= 0) {
    throw ConfigError("frame_signal: invalid sample rate");
  }
  const Eigen::Index frame_length =
      static_cast<Eigen::Index>(std::lround(frame_ms * audio.sample_rate / 1000.0));
  const Eigen::Index hop =
      static_cast<Eigen::Index>(std::lround(hop_ms * audio.sample_rate / 1000.0));
  if (frame_length < 1 || hop < 1) {
    throw ConfigError("frame_signal: frame or hop rounds to zero samples");
  }
  const Eigen::Index n = audio.samples.size();
  if (n < frame_length) {
    throw DataError("frame_signal: audio has " + std::to_string(n) +
                    " samples, shorter than one frame of " +
                    std::to_string(frame_length));
  }
  const Eigen::Index count = (n - frame_length) / hop + 1;

  FrameSequence seq;
  seq.frame_length = frame_length;
  seq.hop = hop;
  seq.sample_rate = audio.sample_rate;
  seq.frames.resize(count, frame_length);
  for (Eigen::Index t = 0; t < count; ++t) {
    seq.frames.row(t) = audio.samples.segment(t * hop, frame_length);
  }
  return seq;
}

/// w[n] = 0.54 - 0.46 * cos(2 pi n / (L - 1))
template <typename Scalar = double>
Eigen::Vector<Scalar, Eigen::Dynamic> hamming_window(Eigen::Index length) {
  Eigen::Vector<Scalar, Eigen::Dynamic> w(length);
  if (length == 1) {
    w[0] = Scalar(1);
    return w;
  }
  const Scalar two_pi = Scalar(2) * Scalar(EIGEN_PI);
  for (Eigen::Index n = 0; n < length; ++n) {
    w[n] = Scalar(0.54) - Scalar(0.46) * std::cos(two_pi * n / (length - 1));
  }
  return w;
}

/// Multiplies every frame pointwise by the chosen analysis window.
inline FrameSequence apply_window(const FrameSequence& frames, WindowKind kind) {
  if (kind == WindowKind::rectangular) {
    return frames;
  }
  FrameSequence out = frames;
  const Eigen::VectorXd w = hamming_window(frames.frame_length);
  out.frames = frames.frames.array().rowwise() * w.transpose().array();
  return out;
}

/// Squared-magnitude DFT of every frame, zero-padded to fft_size.
/// fft_size 0 selects the next power of two >= frame_length.
inline PowerSpectrogram power_spectrum(const FrameSequence& frames,
                                       int fft_size = 0) {
  if (fft_size == 0) {
    fft_size = 1;
    while (fft_size < frames.frame_length) fft_size *= 2;
  }
  if (fft_size < frames.frame_length) {
    throw ConfigError("power_spectrum: fft_size " + std::to_string(fft_size) +
                      " smaller than frame length " +
                      std::to_string(frames.frame_length));
  }

  PowerSpectrogram spec;
  spec.fft_size = fft_size;
  spec.sample_rate = frames.sample_rate;
  spec.bin_hz = static_cast<double>(frames.sample_rate) / fft_size;
  spec.hop_ms = frames.hop_ms();
  const Eigen::Index bins = fft_size / 2 + 1;
  spec.power.resize(frames.num_frames(), bins);

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> in(static_cast<std::size_t>(fft_size));
  std::vector<std::complex<double>> out(static_cast<std::size_t>(fft_size));
  for (Eigen::Index t = 0; t < frames.num_frames(); ++t) {
    for (Eigen::Index n = 0; n < frames.frame_length; ++n) {
      in[static_cast<std::size_t>(n)] = frames.frames(t, n);
    }
    std::fill(in.begin() + frames.frame_length, in.end(),
              std::complex<double>(0.0, 0.0));
    fft.fwd(out, in);
    for (Eigen::Index k = 0; k < bins; ++k) {
      spec.power(t, k) = std::norm(out[static_cast<std::size_t>(k)]);
    }
  }
  return spec;
}

}  // namespace sscf
