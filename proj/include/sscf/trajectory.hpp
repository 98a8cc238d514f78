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

#include "sscf/types.hpp"

namespace sscf {

/// One labeled interval of a vowel-to-vowel transition.
struct TransitionSegment {
  double start_s = 0.0;
  double end_s = 0.0;
  std::string label_from;
  std::string label_to;
};

/// Net-displacement direction of one transition, one angle per plane.
struct TransitionAngleReport {
  Eigen::VectorXd angles_deg;  // per SSCF_i / SSCF_{i+1} plane, in (-180, 180]
  int frames_used = 0;
  double trim_fraction = 0.0;
};

namespace detail {

/// Full-quadrant direction of (dx, dy) in degrees, mapped into (-180, 180].
inline double direction_deg(double dy, double dx) {
  double deg = std::atan2(dy, dx) * 180.0 / EIGEN_PI;
  if (deg <= -180.0) deg += 360.0;
  return deg;
}

inline int plane_offset(bool exclude_plane0) { return exclude_plane0 ? 1 : 0; }

inline int plane_count(const SscfTrack& track, bool exclude_plane0,
                       const char* op) {
  const int planes = track.num_bands() - 1 - plane_offset(exclude_plane0);
  if (planes < 1) {
    throw ConfigError(std::string(op) + ": track with " +
                      std::to_string(track.num_bands()) +
                      " subbands leaves no plane to analyze");
  }
  return planes;
}

}  // namespace detail

/// Direction of motion across a window of `window_n` frames, per plane, in
/// degrees in (-180, 180]. The first window_n frames replicate the first
/// computed frame so the output stays frame-aligned with the track. Frames
/// with zero displacement in a plane yield 0 degrees and are flagged in
/// FeatureMatrix::degenerate.
inline FeatureMatrix transition_angles(const SscfTrack& track, int window_n = 1,
                                       bool exclude_plane0 = false) {
  if (window_n < 1) {
    throw ConfigError("transition_angles: window must be positive");
  }
  const int planes = detail::plane_count(track, exclude_plane0, "transition_angles");
  const int off = detail::plane_offset(exclude_plane0);
  const Eigen::Index frames = track.num_frames();
  if (frames < window_n + 1) {
    throw DataError("transition_angles: track has " + std::to_string(frames) +
                    " frames, need at least " + std::to_string(window_n + 1));
  }

  FeatureMatrix out;
  out.kind = FeatureKind::angle;
  out.frame_hop_ms = track.frame_hop_ms;
  out.silence = track.silence;
  out.values.resize(frames, planes);
  out.degenerate = BoolMatrix::Constant(frames, planes, false);

  for (Eigen::Index t = window_n; t < frames; ++t) {
    for (int i = 0; i < planes; ++i) {
      const int lo = i + off;
      const double dx = track.values(t, lo) - track.values(t - window_n, lo);
      const double dy =
          track.values(t, lo + 1) - track.values(t - window_n, lo + 1);
      if (dx == 0.0 && dy == 0.0) {
        out.values(t, i) = 0.0;
        out.degenerate(t, i) = true;
      } else {
        out.values(t, i) = detail::direction_deg(dy, dx);
      }
    }
  }
  for (Eigen::Index t = 0; t < window_n; ++t) {
    out.values.row(t) = out.values.row(window_n);
    out.degenerate.row(t) = out.degenerate.row(window_n);
  }
  return out;
}

/// Position of each frame in every plane as (angle, radius):
///   angle  = (180/pi) * arctan(SSCF_{i+1} / SSCF_i)   degrees
///   radius = sqrt(SSCF_{i+1}^2 + SSCF_i^2)            Hz
/// Output layout is all angles first, then all radii.
inline FeatureMatrix polar_coordinates(const SscfTrack& track,
                                       bool exclude_plane0 = false) {
  const int planes = detail::plane_count(track, exclude_plane0, "polar_coordinates");
  const int off = detail::plane_offset(exclude_plane0);
  const Eigen::Index frames = track.num_frames();

  FeatureMatrix out;
  out.kind = FeatureKind::polar;
  out.frame_hop_ms = track.frame_hop_ms;
  out.silence = track.silence;
  out.values.resize(frames, 2 * planes);

  for (Eigen::Index t = 0; t < frames; ++t) {
    for (int i = 0; i < planes; ++i) {
      const double x = track.values(t, i + off);
      const double y = track.values(t, i + off + 1);
      if (x <= 0.0 || y <= 0.0) {
        throw DataError("polar_coordinates: non-positive centroid " +
                        std::to_string(x <= 0.0 ? x : y) + " Hz at frame " +
                        std::to_string(t) + ", plane " + std::to_string(i + off));
      }
      out.values(t, i) = std::atan(y / x) * 180.0 / EIGEN_PI;
      out.values(t, planes + i) = std::hypot(x, y);
    }
  }
  return out;
}

namespace detail {

/// d_t = sum_n n * (c_{t+n} - c_{t-n}) / (2 * sum_n n^2), edges clamped.
inline Eigen::MatrixXd delta_regression(const Eigen::MatrixXd& values,
                                        int window) {
  const Eigen::Index frames = values.rows();
  double norm = 0.0;
  for (int n = 1; n <= window; ++n) norm += static_cast<double>(n) * n;
  norm *= 2.0;

  Eigen::MatrixXd out(frames, values.cols());
  for (Eigen::Index t = 0; t < frames; ++t) {
    Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(values.cols());
    for (int n = 1; n <= window; ++n) {
      const Eigen::Index fwd = std::min<Eigen::Index>(t + n, frames - 1);
      const Eigen::Index bwd = std::max<Eigen::Index>(t - n, 0);
      acc += n * (values.row(fwd) - values.row(bwd));
    }
    out.row(t) = acc / norm;
  }
  return out;
}

}  // namespace detail

/// Appends first and second regression derivatives, tripling the width.
/// Column layout: [static | delta | delta-delta].
inline FeatureMatrix append_deltas(const FeatureMatrix& features,
                                   int reg_window = 2) {
  if (reg_window < 1) {
    throw ConfigError("append_deltas: regression window must be positive");
  }
  if (features.delta_order != 0) {
    throw ConfigError("append_deltas: features already carry derivatives");
  }
  if (features.num_frames() < 1) {
    throw DataError("append_deltas: empty feature matrix");
  }
  const Eigen::MatrixXd d1 = detail::delta_regression(features.values, reg_window);
  const Eigen::MatrixXd d2 = detail::delta_regression(d1, reg_window);

  FeatureMatrix out = features;
  out.delta_order = 2;
  out.values.resize(features.num_frames(), 3 * features.dims());
  out.values << features.values, d1, d2;
  return out;
}

/// Direction of the net displacement over the central portion of a labeled
/// segment, per plane. trim_fraction is removed from each side, so the
/// default 0.1 keeps the central 80 percent.
inline TransitionAngleReport analyze_transition(const SscfTrack& track,
                                                const TransitionSegment& seg,
                                                double trim_fraction = 0.1) {
  if (trim_fraction < 0.0 || trim_fraction >= 0.5) {
    throw ConfigError("analyze_transition: trim fraction " +
                      std::to_string(trim_fraction) + " outside [0, 0.5)");
  }
  if (seg.start_s < 0.0 || seg.start_s >= seg.end_s) {
    throw DataError("analyze_transition: invalid segment [" +
                    std::to_string(seg.start_s) + ", " +
                    std::to_string(seg.end_s) + "]");
  }
  if (track.frame_hop_ms <= 0.0) {
    throw ConfigError("analyze_transition: track has no frame hop");
  }
  const int planes = track.num_bands() - 1;
  if (planes < 1) {
    throw ConfigError("analyze_transition: need at least two subbands");
  }

  const double duration = seg.end_s - seg.start_s;
  const double t0 = seg.start_s + trim_fraction * duration;
  const double t1 = seg.end_s - trim_fraction * duration;
  const double hop_s = track.frame_hop_ms / 1000.0;
  const Eigen::Index first = static_cast<Eigen::Index>(std::lround(t0 / hop_s));
  const Eigen::Index last = static_cast<Eigen::Index>(std::lround(t1 / hop_s));
  if (last >= track.num_frames()) {
    throw DataError("analyze_transition: segment end " +
                    std::to_string(seg.end_s) + " s lies beyond the track (" +
                    std::to_string(track.num_frames()) + " frames at " +
                    std::to_string(track.frame_hop_ms) + " ms hop)");
  }
  if (last - first < 1) {
    throw DataError("analyze_transition: segment covers fewer than 2 frames "
                    "after trimming");
  }

  TransitionAngleReport report;
  report.frames_used = static_cast<int>(last - first + 1);
  report.trim_fraction = trim_fraction;
  report.angles_deg.resize(planes);
  for (int i = 0; i < planes; ++i) {
    const double dx = track.values(last, i) - track.values(first, i);
    const double dy = track.values(last, i + 1) - track.values(first, i + 1);
    report.angles_deg[i] = detail::direction_deg(dy, dx);
  }
  return report;
}

/// Checks the complementarity of a transition and its reverse: each signed
/// direction is folded to its angle against the SSCF_i axis in [0, 180],
/// the pair is summed, and the deviation of the sum from 180 degrees is
/// returned per plane.
inline Eigen::VectorXd pair_complementarity(const TransitionAngleReport& a,
                                            const TransitionAngleReport& b) {
  if (a.angles_deg.size() != b.angles_deg.size()) {
    throw ConfigError("pair_complementarity: reports have " +
                      std::to_string(a.angles_deg.size()) + " and " +
                      std::to_string(b.angles_deg.size()) + " planes");
  }
  Eigen::VectorXd dev(a.angles_deg.size());
  for (Eigen::Index i = 0; i < a.angles_deg.size(); ++i) {
    double sum = std::abs(a.angles_deg[i]) + std::abs(b.angles_deg[i]);
    sum = std::fmod(sum, 360.0);
    if (sum <= 0.0) sum += 360.0;
    dev[i] = std::abs(sum - 180.0);
  }
  return dev;
}

/// Largest absolute frame-to-frame jump, per dimension.
inline Eigen::VectorXd continuity_profile(const FeatureMatrix& features) {
  if (features.num_frames() < 2) {
    throw DataError("continuity_profile: need at least 2 frames");
  }
  const Eigen::Index frames = features.num_frames();
  return (features.values.bottomRows(frames - 1) -
          features.values.topRows(frames - 1))
      .cwiseAbs()
      .colwise()
      .maxCoeff()
      .transpose();
}

}  // namespace sscf
