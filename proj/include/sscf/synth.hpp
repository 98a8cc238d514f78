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
#include <functional>
#include <string>
#include <vector>

#include "sscf/types.hpp"

namespace sscf {

/// One vocal tract resonance.
struct Resonance {
  double center_hz = 0.0;
  double bandwidth_hz = 0.0;
};

/// A vowel target: resonances (typically F1..F4), fundamental, amplitude.
struct VowelSpec {
  std::string label;
  std::vector<Resonance> formants;
  double f0 = 0.0;
  double amplitude = 1.0;
};

/// Global frequency scaling of a speaker relative to the reference voice.
struct SpeakerProfile {
  std::string name;
  double formant_scale = 1.0;
  double f0_scale = 1.0;
};

/// Scales formant centers and f0; bandwidths stay as given.
inline VowelSpec scale_speaker(const VowelSpec& spec,
                               const SpeakerProfile& profile) {
  if (profile.formant_scale <= 0.0 || profile.f0_scale <= 0.0) {
    throw ConfigError("scale_speaker: profile scales must be positive");
  }
  VowelSpec out = spec;
  for (Resonance& r : out.formants) {
    r.center_hz *= profile.formant_scale;
  }
  out.f0 *= profile.f0_scale;
  return out;
}

namespace detail {

inline void validate_vowel(const VowelSpec& spec, int sample_rate,
                           const char* op) {
  if (spec.f0 <= 0.0) {
    throw ConfigError(std::string(op) + ": vowel '" + spec.label +
                      "' needs f0 > 0");
  }
  if (spec.formants.empty()) {
    throw ConfigError(std::string(op) + ": vowel '" + spec.label +
                      "' has no formants");
  }
  const double nyquist = 0.5 * sample_rate;
  double prev = 0.0;
  for (const Resonance& r : spec.formants) {
    if (r.center_hz <= prev) {
      throw ConfigError(std::string(op) + ": vowel '" + spec.label +
                        "' formant centers must be strictly increasing");
    }
    if (r.center_hz >= nyquist) {
      throw ConfigError(std::string(op) + ": vowel '" + spec.label +
                        "' formant at " + std::to_string(r.center_hz) +
                        " Hz is at or above Nyquist " + std::to_string(nyquist));
    }
    if (r.bandwidth_hz <= 0.0) {
      throw ConfigError(std::string(op) + ": vowel '" + spec.label +
                        "' needs positive bandwidths");
    }
    prev = r.center_hz;
  }
}

/// Two-pole resonator, unity gain at DC. Coefficients may change per sample.
struct Resonator {
  double y1 = 0.0;
  double y2 = 0.0;

  double step(double x, double center_hz, double bandwidth_hz,
              int sample_rate) {
    const double r = std::exp(-EIGEN_PI * bandwidth_hz / sample_rate);
    const double c = -r * r;
    const double b = 2.0 * r * std::cos(2.0 * EIGEN_PI * center_hz / sample_rate);
    const double a = 1.0 - b - c;
    const double y = a * x + b * y1 + c * y2;
    y2 = y1;
    y1 = y;
    return y;
  }
};

/// Impulse train through a resonator cascade with per-sample targets.
/// `at` maps a time in [0, 1] to the momentary vowel parameters.
inline AudioBuffer synthesize(const std::function<VowelSpec(double)>& at,
                              double duration_s, int sample_rate) {
  const Eigen::Index n =
      static_cast<Eigen::Index>(std::lround(duration_s * sample_rate));
  if (n < 1) {
    throw ConfigError("synthesize: duration too short for one sample");
  }
  const std::size_t num_formants = at(0.0).formants.size();
  std::vector<Resonator> cascade(num_formants);

  AudioBuffer out;
  out.sample_rate = sample_rate;
  out.samples.resize(n);

  double phase = 1.0;  // emit an impulse on the first sample
  for (Eigen::Index i = 0; i < n; ++i) {
    const VowelSpec v = at(n > 1 ? static_cast<double>(i) / (n - 1) : 0.0);
    phase += v.f0 / sample_rate;
    double x = 0.0;
    if (phase >= 1.0) {
      phase -= 1.0;
      x = v.amplitude;
    }
    for (std::size_t m = 0; m < num_formants; ++m) {
      x = cascade[m].step(x, v.formants[m].center_hz,
                          v.formants[m].bandwidth_hz, sample_rate);
    }
    out.samples[i] = x;
  }

  const double peak = out.samples.cwiseAbs().maxCoeff();
  if (peak > 0.0) {
    out.samples *= 0.5 / peak;
  }
  return out;
}

}  // namespace detail

/// Steady vowel: impulse train at the scaled f0 through a cascade of
/// two-pole resonators at the scaled formant centers, peak-normalized
/// to 0.5. Deterministic and seedless.
inline AudioBuffer synthesize_vowel(const VowelSpec& spec,
                                    const SpeakerProfile& profile,
                                    double duration_s, int sample_rate) {
  const VowelSpec scaled = scale_speaker(spec, profile);
  detail::validate_vowel(scaled, sample_rate, "synthesize_vowel");
  return detail::synthesize([&scaled](double) { return scaled; }, duration_s,
                            sample_rate);
}

/// Vowel-to-vowel glide: formant centers, bandwidths, and f0 interpolate
/// linearly from v1 to v2 over the middle 60 percent of the duration and
/// hold steady at both ends.
inline AudioBuffer synthesize_transition(const VowelSpec& v1,
                                         const VowelSpec& v2,
                                         const SpeakerProfile& profile,
                                         double duration_s, int sample_rate) {
  const VowelSpec a = scale_speaker(v1, profile);
  const VowelSpec b = scale_speaker(v2, profile);
  detail::validate_vowel(a, sample_rate, "synthesize_transition");
  detail::validate_vowel(b, sample_rate, "synthesize_transition");
  if (a.formants.size() != b.formants.size()) {
    throw ConfigError("synthesize_transition: '" + v1.label + "' and '" +
                      v2.label + "' have different formant counts");
  }

  auto at = [&a, &b](double t) {
    double u = (t - 0.2) / 0.6;
    u = std::clamp(u, 0.0, 1.0);
    VowelSpec v = a;
    for (std::size_t m = 0; m < a.formants.size(); ++m) {
      v.formants[m].center_hz = a.formants[m].center_hz +
                                u * (b.formants[m].center_hz - a.formants[m].center_hz);
      v.formants[m].bandwidth_hz =
          a.formants[m].bandwidth_hz +
          u * (b.formants[m].bandwidth_hz - a.formants[m].bandwidth_hz);
    }
    v.f0 = a.f0 + u * (b.f0 - a.f0);
    return v;
  };
  return detail::synthesize(at, duration_s, sample_rate);
}

}  // namespace sscf
