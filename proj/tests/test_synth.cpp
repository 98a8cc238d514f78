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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "sscf/pipeline.hpp"
#include "sscf/synth.hpp"
#include "test_util.hpp"

using namespace sscf;

namespace {

// Typical four-formant /a/ and /i/ targets at f0 120.
const VowelSpec kVowelA{
    "a", {{730, 90}, {1090, 110}, {2440, 170}, {3400, 250}}, 120.0, 1.0};
const VowelSpec kVowelI{
    "i", {{270, 60}, {2290, 110}, {3010, 170}, {3700, 250}}, 120.0, 1.0};
const SpeakerProfile kRef{"ref", 1.0, 1.0};

Eigen::VectorXd average_power(const AudioBuffer& audio, int fft_size) {
  const AudioBuffer emphasized = pre_emphasize(audio, 0.97);
  const FrameSequence frames =
      apply_window(frame_signal(emphasized, 25.0, 12.5), WindowKind::hamming);
  return power_spectrum(frames, fft_size).power.colwise().mean();
}

// Picks the spectral peak nearest `center_hz`: the averaged spectrum is
// smoothed over one f0 period of bins to suppress harmonic ripple, the best
// bin within +-search_hz is taken, and the peak is refined by parabolic
// interpolation on the log spectrum.
double peak_near(const Eigen::VectorXd& power, double bin_hz, double center_hz,
                 double f0_hz, double search_hz) {
  const int half = std::max(1, static_cast<int>(std::lround(0.5 * f0_hz / bin_hz)));
  const int n = static_cast<int>(power.size());
  std::vector<double> smooth(n, 0.0);
  for (int k = 0; k < n; ++k) {
    double sum = 0.0;
    int count = 0;
    for (int d = -half; d <= half; ++d) {
      if (k + d >= 0 && k + d < n) {
        sum += power[k + d];
        ++count;
      }
    }
    smooth[k] = std::log(sum / count + 1e-300);
  }
  const int lo = std::max(1, static_cast<int>(std::lround((center_hz - search_hz) / bin_hz)));
  const int hi = std::min(n - 2, static_cast<int>(std::lround((center_hz + search_hz) / bin_hz)));
  int best = lo;
  for (int k = lo; k <= hi; ++k) {
    if (smooth[k] > smooth[best]) best = k;
  }
  const double a = smooth[best - 1], b = smooth[best], c = smooth[best + 1];
  const double denom = a - 2.0 * b + c;
  const double frac = denom < 0.0 ? 0.5 * (a - c) / denom : 0.0;
  return (best + frac) * bin_hz;
}

}  // namespace

TEST_CASE("scale_speaker: formant centers and f0 scale, bandwidths do not") {
  const VowelSpec same = scale_speaker(kVowelA, kRef);
  CHECK(same.formants[0].center_hz == 730.0);
  CHECK(same.f0 == 120.0);

  VowelSpec spec;
  spec.label = "x";
  spec.formants = {{500.0, 60.0}, {1500.0, 90.0}};
  spec.f0 = 120.0;
  const VowelSpec scaled = scale_speaker(spec, {"big", 1.2, 11.0 / 6.0});
  CHECK(scaled.formants[0].center_hz == doctest::Approx(600.0).epsilon(1e-12));
  CHECK(scaled.formants[1].center_hz == doctest::Approx(1800.0).epsilon(1e-12));
  CHECK(scaled.formants[0].bandwidth_hz == 60.0);
  CHECK(scaled.formants[1].bandwidth_hz == 90.0);
  CHECK(scaled.f0 == doctest::Approx(220.0).epsilon(1e-12));

  CHECK_THROWS_AS(scale_speaker(spec, {"bad", 0.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(scale_speaker(spec, {"bad", 1.0, -2.0}), ConfigError);
}

TEST_CASE("synthesize_vowel: deterministic, bounded, long enough") {
  const AudioBuffer one = synthesize_vowel(kVowelA, kRef, 0.4, 16000);
  const AudioBuffer two = synthesize_vowel(kVowelA, kRef, 0.4, 16000);
  CHECK(one.samples.size() == 6400);
  CHECK(one.sample_rate == 16000);
  CHECK((one.samples - two.samples).cwiseAbs().maxCoeff() == 0.0);
  CHECK(one.samples.cwiseAbs().maxCoeff() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("synthesize_vowel: peak normalization cancels the input amplitude") {
  VowelSpec loud = kVowelA;
  loud.amplitude = 2.0;
  const AudioBuffer base = synthesize_vowel(kVowelA, kRef, 0.3, 16000);
  const AudioBuffer scaled = synthesize_vowel(loud, kRef, 0.3, 16000);
  CHECK((base.samples - scaled.samples).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("synthesize_vowel: rejects impossible vowels") {
  VowelSpec bad = kVowelA;
  bad.f0 = 0.0;
  CHECK_THROWS_AS(synthesize_vowel(bad, kRef, 0.4, 16000), ConfigError);

  bad = kVowelA;
  bad.formants.clear();
  CHECK_THROWS_AS(synthesize_vowel(bad, kRef, 0.4, 16000), ConfigError);

  bad = kVowelA;
  bad.formants[1].center_hz = 700.0;  // below F1
  CHECK_THROWS_AS(synthesize_vowel(bad, kRef, 0.4, 16000), ConfigError);

  bad = kVowelA;
  bad.formants[3].bandwidth_hz = 0.0;
  CHECK_THROWS_AS(synthesize_vowel(bad, kRef, 0.4, 16000), ConfigError);

  // 3700 Hz * 2.3 lands above the 8 kHz Nyquist.
  CHECK_THROWS_AS(synthesize_vowel(kVowelI, {"huge", 2.3, 1.0}, 0.4, 16000),
                  ConfigError);
}

TEST_CASE("synthesize_vowel: spectral peaks sit at the commanded formants") {
  // Loose enough for bandwidth-induced skew, tight enough to catch a
  // misplaced or missing resonance.
  constexpr double kTolHz = 50.0;
  const int sample_rate = 16000;
  const int fft_size = 4096;
  const double bin_hz = static_cast<double>(sample_rate) / fft_size;

  const std::vector<VowelSpec> vowels = {
      {"low", {{600, 80}, {1400, 90}, {2500, 120}, {3600, 150}}, 120.0, 1.0},
      {"high", {{350, 60}, {1800, 90}, {2800, 120}, {3900, 150}}, 120.0, 1.0},
  };
  const std::vector<SpeakerProfile> profiles = {{"ref", 1.0, 1.0},
                                                {"shift", 1.18, 1.25}};
  for (const SpeakerProfile& profile : profiles) {
    for (const VowelSpec& vowel : vowels) {
      const AudioBuffer audio = synthesize_vowel(vowel, profile, 0.4, sample_rate);
      const Eigen::VectorXd power = average_power(audio, fft_size);
      const VowelSpec scaled = scale_speaker(vowel, profile);
      for (const Resonance& r : scaled.formants) {
        const double est = peak_near(power, bin_hz, r.center_hz, scaled.f0, 150.0);
        INFO(vowel.label, "/", profile.name, " formant at ", r.center_hz, " Hz");
        CHECK(std::abs(est - r.center_hz) < kTolHz);
      }
    }
  }
}

TEST_CASE("synthesize_transition: equal endpoints reduce to the steady vowel") {
  const AudioBuffer steady = synthesize_vowel(kVowelA, kRef, 0.4, 16000);
  const AudioBuffer glide = synthesize_transition(kVowelA, kVowelA, kRef, 0.4, 16000);
  CHECK((steady.samples - glide.samples).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("synthesize_transition: mismatched formant counts are rejected") {
  VowelSpec three = kVowelI;
  three.formants.pop_back();
  CHECK_THROWS_AS(synthesize_transition(kVowelA, three, kRef, 0.4, 16000),
                  ConfigError);
}

TEST_CASE("transition a->i: low centroids fall while mid centroids rise") {
  const AudioBuffer audio = synthesize_transition(kVowelA, kVowelI, kRef, 0.6, 16000);
  const SscfTrack track = extract_sscf_track(audio, ExtractionConfig{});
  const Eigen::Index frames = track.num_frames();
  const Eigen::Index span = frames / 5;
  REQUIRE(span >= 2);

  // F1 drops 730 -> 270 and F2 climbs 1090 -> 2290, so the centroid of the
  // band around F1 falls and the one around F2 rises.
  const double band1_start = track.values.col(1).head(span).mean();
  const double band1_end = track.values.col(1).tail(span).mean();
  const double band2_start = track.values.col(2).head(span).mean();
  const double band2_end = track.values.col(2).tail(span).mean();
  CHECK(band1_end < band1_start - 100.0);
  CHECK(band2_end > band2_start + 100.0);
}

TEST_CASE("transition reversal: direction angles are complementary") {
  // Endpoints must land inside the steady holds, so the trim places them at
  // 0.075 s and 0.425 s of the 0.5 s glide (holds end/begin at 0.1 / 0.4 s).
  const AudioBuffer fwd = synthesize_transition(kVowelA, kVowelI, kRef, 0.5, 16000);
  const AudioBuffer bwd = synthesize_transition(kVowelI, kVowelA, kRef, 0.5, 16000);
  const ExtractionConfig cfg;
  const SscfTrack track_f = extract_sscf_track(fwd, cfg);
  const SscfTrack track_b = extract_sscf_track(bwd, cfg);

  TransitionSegment seg;
  seg.start_s = 0.0;
  seg.end_s = 0.5;
  seg.label_from = "a";
  seg.label_to = "i";
  const TransitionAngleReport rep_f = analyze_transition(track_f, seg, 0.15);
  const TransitionAngleReport rep_b = analyze_transition(track_b, seg, 0.15);

  const Eigen::VectorXd dev = pair_complementarity(rep_f, rep_b);
  CHECK(dev.maxCoeff() < 2.0);
}
