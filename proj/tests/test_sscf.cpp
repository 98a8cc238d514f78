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
#include <random>
#include <vector>

#include "sscf/mel.hpp"
#include "sscf/pipeline.hpp"
#include "sscf/subbands.hpp"
#include "test_util.hpp"

using namespace sscf;

namespace {

// A spectrogram with hand-placed power values on a fixed bin grid.
PowerSpectrogram make_spectrum(const Eigen::MatrixXd& power, double bin_hz,
                               int sample_rate) {
  PowerSpectrogram spec;
  spec.power = power;
  spec.bin_hz = bin_hz;
  spec.fft_size = static_cast<int>(2 * (power.cols() - 1));
  spec.sample_rate = sample_rate;
  spec.hop_ms = 10.0;
  return spec;
}

}  // namespace

TEST_CASE("mel scale: closed-form values and round trip") {
  CHECK(hz_to_mel(0.0) == 0.0);
  CHECK(hz_to_mel(700.0) == doctest::Approx(2595.0 * std::log10(2.0)).epsilon(1e-12));
  CHECK(hz_to_mel(1000.0) == doctest::Approx(999.9855371).epsilon(1e-9));
  CHECK(hz_to_mel(8000.0) == doctest::Approx(2840.0230467).epsilon(1e-9));
  CHECK(mel_to_hz(hz_to_mel(8000.0)) == doctest::Approx(8000.0).epsilon(1e-12));

  for (double hz : {10.0, 125.0, 1000.0, 3456.78, 7999.0}) {
    CHECK(mel_to_hz(hz_to_mel(hz)) == doctest::Approx(hz).epsilon(1e-9));
    CHECK(hz_to_mel(mel_to_hz(hz)) == doctest::Approx(hz).epsilon(1e-9));
  }

  // Monotone increasing.
  CHECK(hz_to_mel(200.0) < hz_to_mel(201.0));

  CHECK_THROWS_AS(hz_to_mel(-1.0), ConfigError);
}

TEST_CASE("subbands: single band spans the whole range") {
  const auto bands = build_subbands(1, 0.0, 8000.0, FilterShape::rectangular, 1.0);
  REQUIRE(bands.size() == 1);
  CHECK(bands[0].low_hz == 0.0);
  CHECK(bands[0].high_hz == 8000.0);
}

TEST_CASE("subbands: mel-equal edges for six bands over 0..8 kHz") {
  const auto bands = build_subbands(6, 0.0, 8000.0, FilterShape::rectangular, 1.0);
  REQUIRE(bands.size() == 6);

  // First boundary: one sixth of the full mel range.
  const double expected = testutil::naive_mel_to_hz(testutil::naive_hz_to_mel(8000.0) / 6.0);
  CHECK(bands[0].high_hz == doctest::Approx(expected).epsilon(1e-9));
  CHECK(bands[0].high_hz == doctest::Approx(365.6).epsilon(1e-3));

  // Consecutive bands share edges exactly; widths increase with frequency.
  for (int m = 0; m + 1 < 6; ++m) {
    CHECK(bands[m].high_hz == bands[m + 1].low_hz);
    CHECK(bands[m].high_hz - bands[m].low_hz <
          bands[m + 1].high_hz - bands[m + 1].low_hz);
  }
  CHECK(bands[5].high_hz == 8000.0);

  // All bands have equal width on the mel axis.
  const double mel_width = hz_to_mel(bands[0].high_hz) - hz_to_mel(bands[0].low_hz);
  for (const auto& band : bands) {
    CHECK(hz_to_mel(band.high_hz) - hz_to_mel(band.low_hz) ==
          doctest::Approx(mel_width).epsilon(1e-9));
  }
}

TEST_CASE("subbands: invalid parameters are rejected") {
  CHECK_THROWS_AS(build_subbands(0, 0.0, 8000.0, FilterShape::rectangular, 1.0),
                  ConfigError);
  CHECK_THROWS_AS(build_subbands(6, -1.0, 8000.0, FilterShape::rectangular, 1.0),
                  ConfigError);
  CHECK_THROWS_AS(build_subbands(6, 4000.0, 1000.0, FilterShape::rectangular, 1.0),
                  ConfigError);
  CHECK_THROWS_AS(build_subbands(6, 0.0, 8000.0, FilterShape::rectangular, -0.5),
                  ConfigError);
}

TEST_CASE("centroid: hand-computed examples on a coarse bin grid") {
  // Bins at 0, 100, ..., 800 Hz; one band covering [350, 650] picks up the
  // bins at 400, 500, 600.
  Eigen::MatrixXd power = Eigen::MatrixXd::Zero(1, 9);
  SubbandSpec band;
  band.index = 0;
  band.low_hz = 350.0;
  band.high_hz = 650.0;
  band.shape = FilterShape::rectangular;

  SUBCASE("gamma 0 reduces to the unweighted bin mean") {
    power(0, 4) = 9.0;
    power(0, 5) = 1.0;
    power(0, 6) = 2.0;
    band.gamma = 0.0;
    const SscfTrack track =
        compute_sscf(make_spectrum(power, 100.0, 16000), {band});
    CHECK(track.values(0, 0) == doctest::Approx(500.0).epsilon(1e-12));
  }
  SUBCASE("gamma 1 weights bins by power") {
    power(0, 4) = 1.0;
    power(0, 5) = 2.0;
    power(0, 6) = 1.0;
    band.gamma = 1.0;
    const SscfTrack track =
        compute_sscf(make_spectrum(power, 100.0, 16000), {band});
    CHECK(track.values(0, 0) == doctest::Approx(500.0).epsilon(1e-12));

    power(0, 5) = 6.0;
    const SscfTrack heavier =
        compute_sscf(make_spectrum(power, 100.0, 16000), {band});
    // (400 + 3000 + 600) / 8
    CHECK(heavier.values(0, 0) == doctest::Approx(500.0).epsilon(1e-12));
    power(0, 4) = 3.0;
    const SscfTrack skewed =
        compute_sscf(make_spectrum(power, 100.0, 16000), {band});
    // (1200 + 3000 + 600) / 10
    CHECK(skewed.values(0, 0) == doctest::Approx(480.0).epsilon(1e-12));
  }
  SUBCASE("point mass lands on its bin") {
    power(0, 6) = 4.0;
    band.gamma = 2.0;
    const SscfTrack track =
        compute_sscf(make_spectrum(power, 100.0, 16000), {band});
    CHECK(track.values(0, 0) == doctest::Approx(600.0).epsilon(1e-12));
    CHECK_FALSE(track.silence(0));
  }
  SUBCASE("zero power falls back to the band's mel midpoint and flags silence") {
    band.gamma = 1.0;
    const SscfTrack track =
        compute_sscf(make_spectrum(power, 100.0, 16000), {band});
    const double mel_mid =
        0.5 * (testutil::naive_hz_to_mel(350.0) + testutil::naive_hz_to_mel(650.0));
    CHECK(track.values(0, 0) ==
          doctest::Approx(testutil::naive_mel_to_hz(mel_mid)).epsilon(1e-9));
    CHECK(track.silence(0));
  }
}

TEST_CASE("centroid: a 1 kHz tone lands within 20 Hz of 1 kHz") {
  const AudioBuffer tone = testutil::sine_audio(1000.0, 1.0, 16000);
  const ExtractionConfig cfg;
  const SscfTrack track = extract_sscf_track(tone, cfg);

  int containing = -1;
  for (int m = 0; m < track.num_bands(); ++m) {
    if (track.subbands[m].low_hz <= 1000.0 && 1000.0 < track.subbands[m].high_hz) {
      containing = m;
    }
  }
  REQUIRE(containing >= 0);
  const double mean = track.values.col(containing).mean();
  CHECK(mean == doctest::Approx(1000.0).epsilon(0.02));
  CHECK(std::abs(mean - 1000.0) < 20.0);
}

TEST_CASE("centroid: containment within band bounds on noise") {
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const AudioBuffer noise = testutil::noise_audio(seed, 0.3, 16000);
    const ExtractionConfig cfg;
    const SscfTrack track = extract_sscf_track(noise, cfg);
    for (int m = 0; m < track.num_bands(); ++m) {
      CHECK(track.values.col(m).minCoeff() >= track.subbands[m].low_hz);
      CHECK(track.values.col(m).maxCoeff() <= track.subbands[m].high_hz);
    }
  }
}

TEST_CASE("centroid: scaling the whole spectrum does not move it") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Eigen::MatrixXd power(4, 257);
  for (Eigen::Index t = 0; t < power.rows(); ++t) {
    for (Eigen::Index k = 0; k < power.cols(); ++k) power(t, k) = dist(rng);
  }
  const auto bands = build_subbands(6, 0.0, 8000.0, FilterShape::rectangular, 1.5);
  const PowerSpectrogram spec = make_spectrum(power, 31.25, 16000);
  const PowerSpectrogram scaled = make_spectrum(7.5 * power, 31.25, 16000);

  const SscfTrack a = compute_sscf(spec, bands);
  const SscfTrack b = compute_sscf(scaled, bands);
  CHECK((a.values - b.values).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("centroid: matches the direct-summation reference") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Eigen::MatrixXd power(20, 257);
  for (Eigen::Index t = 0; t < power.rows(); ++t) {
    for (Eigen::Index k = 0; k < power.cols(); ++k) power(t, k) = dist(rng);
  }
  const PowerSpectrogram spec = make_spectrum(power, 31.25, 16000);
  const std::vector<double> edges = testutil::naive_band_edges(6, 0.0, 8000.0);

  for (double gamma : {0.5, 1.0, 2.0}) {
    for (FilterShape shape : {FilterShape::rectangular, FilterShape::triangular}) {
      const auto bands = build_subbands(6, 0.0, 8000.0, shape, gamma);
      const SscfTrack track = compute_sscf(spec, bands);
      for (Eigen::Index t = 0; t < power.rows(); ++t) {
        const testutil::NaiveSscfRow oracle = testutil::naive_sscf_row(
            power.row(t).transpose(), 31.25, edges, gamma,
            shape == FilterShape::triangular);
        for (int m = 0; m < 6; ++m) {
          CHECK(track.values(t, m) ==
                doctest::Approx(oracle.centroids(m)).epsilon(1e-9));
          CHECK(track.silence(t) == false);
          CHECK(oracle.silent[m] == false);
        }
      }
    }
  }
}

TEST_CASE("smoothing: centered mean with shrinking edge windows") {
  SscfTrack track;
  track.frame_hop_ms = 10.0;
  track.values.resize(4, 1);
  track.values << 0.0, 1.0, 2.0, 3.0;
  track.silence = BoolArray::Constant(4, false);

  const SscfTrack smooth = smooth_track(track, 3);
  CHECK(smooth.values(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(smooth.values(1, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(smooth.values(2, 0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(smooth.values(3, 0) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("smoothing: window one is the identity, even windows are rejected") {
  const SscfTrack track = testutil::random_track(31, 12, 6);
  const SscfTrack same = smooth_track(track, 1);
  CHECK((same.values - track.values).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(smooth_track(track, 4), ConfigError);
  CHECK_THROWS_AS(smooth_track(track, 0), ConfigError);
}

TEST_CASE("smoothing: keeps values inside the band bounds") {
  const AudioBuffer noise = testutil::noise_audio(41, 0.5, 16000);
  ExtractionConfig cfg;
  cfg.smooth_window = 1;
  const SscfTrack raw = extract_sscf_track(noise, cfg);
  const SscfTrack smooth = smooth_track(raw, 5);
  for (int m = 0; m < smooth.num_bands(); ++m) {
    CHECK(smooth.values.col(m).minCoeff() >= smooth.subbands[m].low_hz);
    CHECK(smooth.values.col(m).maxCoeff() <= smooth.subbands[m].high_hz);
  }
}

TEST_CASE("pipeline: digital silence flags every frame") {
  AudioBuffer audio;
  audio.sample_rate = 16000;
  audio.samples = Eigen::VectorXd::Zero(8000);
  const ExtractionConfig cfg;
  const SscfTrack track = extract_sscf_track(audio, cfg);
  CHECK(track.silence.all());

  // Fallback values are the band mel midpoints, inside each band.
  for (int m = 0; m < track.num_bands(); ++m) {
    CHECK(track.values.col(m).minCoeff() > track.subbands[m].low_hz);
    CHECK(track.values.col(m).maxCoeff() < track.subbands[m].high_hz);
  }
}

TEST_CASE("pipeline: f_high defaults to Nyquist and config is respected") {
  const AudioBuffer noise = testutil::noise_audio(51, 0.2, 16000);
  ExtractionConfig cfg;
  const SscfTrack track = extract_sscf_track(noise, cfg);
  REQUIRE(track.num_bands() == 6);
  CHECK(track.subbands.back().high_hz == doctest::Approx(8000.0).epsilon(1e-12));

  cfg.num_subbands = 4;
  cfg.f_high_hz = 6000.0;
  const SscfTrack narrower = extract_sscf_track(noise, cfg);
  REQUIRE(narrower.num_bands() == 4);
  CHECK(narrower.subbands.back().high_hz == doctest::Approx(6000.0).epsilon(1e-12));
}
