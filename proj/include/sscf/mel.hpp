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

#include "sscf/error.hpp"

namespace sscf {

/// mel = 2595 * log10(1 + hz / 700)
template <typename Scalar>
Scalar hz_to_mel(Scalar hz) {
  if (hz < Scalar(0)) {
    throw ConfigError("hz_to_mel: negative frequency " + std::to_string(hz));
  }
  return Scalar(2595) * std::log10(Scalar(1) + hz / Scalar(700));
}

/// Exact inverse of hz_to_mel: hz = 700 * (10^(mel / 2595) - 1)
template <typename Scalar>
Scalar mel_to_hz(Scalar mel) {
  if (mel < Scalar(0)) {
    throw ConfigError("mel_to_hz: negative mel value " + std::to_string(mel));
  }
  return Scalar(700) * (std::pow(Scalar(10), mel / Scalar(2595)) - Scalar(1));
}

}  // namespace sscf
