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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "sscf/types.hpp"

namespace sscf {

namespace detail {

inline std::uint16_t read_u16le(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

inline std::uint32_t read_u32le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace detail

/// Reads a RIFF/WAVE file and returns a normalized mono buffer.
///
/// Supported encodings: 16-bit PCM (divided by 32768) and 32-bit IEEE float
/// (taken as is), including the WAVE_FORMAT_EXTENSIBLE wrappers around them.
/// Multi-channel audio is averaged down to one channel.
inline AudioBuffer load_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open wav file '" + path + "'");
  }
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw IoError("read failure on wav file '" + path + "'");
  }
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw DataError("'" + path + "' is not a RIFF/WAVE file");
  }

  std::uint16_t format_tag = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits = 0;
  bool have_fmt = false;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char* id = reinterpret_cast<const char*>(bytes.data() + pos);
    std::uint32_t chunk_size = detail::read_u32le(bytes.data() + pos + 4);
    std::size_t body = pos + 8;
    if (body + chunk_size > bytes.size()) {
      throw DataError("'" + path + "' has a truncated '" +
                      std::string(id, 4) + "' chunk");
    }
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (chunk_size < 16) {
        throw DataError("'" + path + "' has a malformed fmt chunk");
      }
      format_tag = detail::read_u16le(bytes.data() + body);
      channels = detail::read_u16le(bytes.data() + body + 2);
      sample_rate = detail::read_u32le(bytes.data() + body + 4);
      bits = detail::read_u16le(bytes.data() + body + 14);
      if (format_tag == 0xFFFE && chunk_size >= 40) {
        // extensible: the real format tag is the first two bytes of the GUID
        format_tag = detail::read_u16le(bytes.data() + body + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      data = bytes.data() + body;
      data_size = chunk_size;
    }
    pos = body + chunk_size + (chunk_size % 2);  // chunks are word-aligned
  }

  if (!have_fmt || data == nullptr) {
    throw DataError("'" + path + "' is missing a fmt or data chunk");
  }
  if (channels == 0 || sample_rate == 0) {
    throw DataError("'" + path + "' has an invalid fmt chunk");
  }

  const bool pcm16 = (format_tag == 1 && bits == 16);
  const bool float32 = (format_tag == 3 && bits == 32);
  if (!pcm16 && !float32) {
    throw DataError("'" + path + "' has an unsupported encoding (format tag " +
                    std::to_string(format_tag) + ", " + std::to_string(bits) +
                    " bits); only 16-bit PCM and 32-bit float are supported");
  }

  const std::size_t bytes_per_sample = bits / 8;
  const std::size_t frame_bytes = bytes_per_sample * channels;
  const std::size_t num_frames = data_size / frame_bytes;
  if (num_frames == 0) {
    throw DataError("'" + path + "' contains zero-length audio");
  }

  AudioBuffer out;
  out.sample_rate = static_cast<int>(sample_rate);
  out.samples.resize(static_cast<Eigen::Index>(num_frames));
  const double inv_channels = 1.0 / channels;
  for (std::size_t i = 0; i < num_frames; ++i) {
    double acc = 0.0;
    for (std::uint16_t c = 0; c < channels; ++c) {
      const unsigned char* p = data + i * frame_bytes + c * bytes_per_sample;
      if (pcm16) {
        std::int16_t v;
        std::memcpy(&v, p, 2);
        acc += v / 32768.0;
      } else {
        float v;
        std::memcpy(&v, p, 4);
        acc += v;
      }
    }
    out.samples[static_cast<Eigen::Index>(i)] = acc * inv_channels;
  }
  return out;
}

/// Writes a mono 16-bit PCM WAV file. Samples are clipped to [-1, 1].
inline void write_wav16(const std::string& path, const AudioBuffer& audio) {
  if (audio.sample_rate <= 0 || audio.samples.size() == 0) {
    throw ConfigError("write_wav16: empty buffer or invalid sample rate");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  const std::uint32_t n = static_cast<std::uint32_t>(audio.samples.size());
  const std::uint32_t data_size = n * 2;
  const std::uint32_t riff_size = 36 + data_size;
  const std::uint32_t rate = static_cast<std::uint32_t>(audio.sample_rate);
  const std::uint32_t byte_rate = rate * 2;

  auto put_u16 = [&out](std::uint16_t v) {
    unsigned char b[2] = {static_cast<unsigned char>(v & 0xFF),
                          static_cast<unsigned char>(v >> 8)};
    out.write(reinterpret_cast<const char*>(b), 2);
  };
  auto put_u32 = [&out](std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xFF),
                          static_cast<unsigned char>((v >> 8) & 0xFF),
                          static_cast<unsigned char>((v >> 16) & 0xFF),
                          static_cast<unsigned char>((v >> 24) & 0xFF)};
    out.write(reinterpret_cast<const char*>(b), 4);
  };

  out.write("RIFF", 4);
  put_u32(riff_size);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  put_u32(16);
  put_u16(1);  // PCM
  put_u16(1);  // mono
  put_u32(rate);
  put_u32(byte_rate);
  put_u16(2);   // block align
  put_u16(16);  // bits
  out.write("data", 4);
  put_u32(data_size);
  for (Eigen::Index i = 0; i < audio.samples.size(); ++i) {
    // Same 32768 scale as the reader, so a round trip loses at most half an
    // LSB; the clamp only engages at exactly +1.0.
    long v = std::lround(audio.samples[i] * 32768.0);
    v = std::clamp(v, -32768L, 32767L);
    put_u16(static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
  }
  if (!out) {
    throw IoError("write failure on '" + path + "'");
  }
}

}  // namespace sscf
