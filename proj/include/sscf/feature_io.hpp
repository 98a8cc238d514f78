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

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "sscf/pipeline.hpp"
#include "sscf/types.hpp"

namespace sscf {

enum class FeatureFormat : std::uint8_t { csv, bin };

/// Metadata stored alongside the payload in both file formats.
struct FeatureFileHeader {
  FeatureKind kind = FeatureKind::sscf;
  std::uint32_t dims = 0;
  std::uint32_t frames = 0;
  double hop_ms = 0.0;
  std::uint32_t sample_rate = 0;
  Fingerprint fingerprint{};
};

struct FeatureFile {
  FeatureFileHeader header;
  FeatureMatrix features;
};

namespace detail {

inline constexpr char kBinMagic[5] = {'S', 'S', 'C', 'F', '1'};
inline constexpr std::size_t kBinHeaderSize = 5 + 1 + 4 + 4 + 8 + 4 + 16;

inline void put_u32le(std::string& s, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

inline void put_f64le(std::string& s, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  for (int i = 0; i < 8; ++i) s.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
}

inline std::uint32_t get_u32le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

inline double get_f64le(const unsigned char* p) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

inline Fingerprint parse_fingerprint_hex(const std::string& hex) {
  if (hex.size() != 32) {
    throw DataError("feature file: fingerprint must be 32 hex digits");
  }
  Fingerprint fp;
  for (std::size_t i = 0; i < 16; ++i) {
    unsigned v = 0;
    if (std::sscanf(hex.c_str() + 2 * i, "%2x", &v) != 1) {
      throw DataError("feature file: malformed fingerprint '" + hex + "'");
    }
    fp[i] = static_cast<std::uint8_t>(v);
  }
  return fp;
}

}  // namespace detail

/// Writes features plus header metadata.
///
/// csv: `# key: value` header lines, then one frame per row with
/// comma-separated values printed with 12 significant digits.
///
/// bin: magic "SSCF1", then little-endian kind u8, dims u32, frames u32,
/// hop_ms f64, sample_rate u32, a 16-byte fingerprint, and the payload as
/// row-major IEEE-754 f64.
inline void write_features(const FeatureMatrix& features,
                           const std::string& path, FeatureFormat format,
                           std::uint32_t sample_rate,
                           const Fingerprint& fingerprint) {
  if (features.values.rows() > std::numeric_limits<std::uint32_t>::max() ||
      features.values.cols() > std::numeric_limits<std::uint32_t>::max()) {
    throw DataError("write_features: dimensions overflow the file header");
  }
  const std::uint32_t frames = static_cast<std::uint32_t>(features.values.rows());
  const std::uint32_t dims = static_cast<std::uint32_t>(features.values.cols());

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing");
  }

  if (format == FeatureFormat::csv) {
    out << "# kind: " << feature_kind_name(features.kind) << "\n";
    out << "# dims: " << dims << "\n";
    out << "# frames: " << frames << "\n";
    char buf[400];
    std::snprintf(buf, sizeof(buf), "# hop_ms: %.12g\n", features.frame_hop_ms);
    out << buf;
    out << "# sample_rate: " << sample_rate << "\n";
    out << "# fingerprint: " << fingerprint_hex(fingerprint) << "\n";
    for (std::uint32_t t = 0; t < frames; ++t) {
      std::string line;
      for (std::uint32_t d = 0; d < dims; ++d) {
        std::snprintf(buf, sizeof(buf), "%.12g", features.values(t, d));
        if (d) line += ',';
        line += buf;
      }
      out << line << "\n";
    }
  } else {
    std::string blob;
    blob.reserve(detail::kBinHeaderSize + 8u * frames * dims);
    blob.append(detail::kBinMagic, 5);
    blob.push_back(static_cast<char>(features.kind));
    detail::put_u32le(blob, dims);
    detail::put_u32le(blob, frames);
    detail::put_f64le(blob, features.frame_hop_ms);
    detail::put_u32le(blob, sample_rate);
    blob.append(reinterpret_cast<const char*>(fingerprint.data()), 16);
    for (std::uint32_t t = 0; t < frames; ++t) {
      for (std::uint32_t d = 0; d < dims; ++d) {
        detail::put_f64le(blob, features.values(t, d));
      }
    }
    out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
  }
  if (!out) {
    throw IoError("write failure on '" + path + "'");
  }
}

/// Reads either format back, sniffing by the magic bytes.
inline FeatureFile read_feature_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open feature file '" + path + "'");
  }
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw IoError("read failure on feature file '" + path + "'");
  }

  FeatureFile file;
  const bool is_bin =
      bytes.size() >= 5 && std::memcmp(bytes.data(), detail::kBinMagic, 5) == 0;
  const bool is_csv = !bytes.empty() && bytes[0] == '#';
  if (!is_bin && !is_csv) {
    throw DataError("'" + path +
                    "' has neither the bin magic nor a csv header line");
  }

  if (is_bin) {
    if (bytes.size() < detail::kBinHeaderSize) {
      throw DataError("'" + path + "' bin header truncated: expected at least " +
                      std::to_string(detail::kBinHeaderSize) + " bytes, got " +
                      std::to_string(bytes.size()));
    }
    const unsigned char* p = bytes.data() + 5;
    const std::uint8_t kind_id = *p;
    if (kind_id > 3) {
      throw DataError("'" + path + "' has unknown feature kind id " +
                      std::to_string(kind_id));
    }
    file.header.kind = static_cast<FeatureKind>(kind_id);
    file.header.dims = detail::get_u32le(p + 1);
    file.header.frames = detail::get_u32le(p + 5);
    file.header.hop_ms = detail::get_f64le(p + 9);
    file.header.sample_rate = detail::get_u32le(p + 17);
    std::memcpy(file.header.fingerprint.data(), p + 21, 16);

    const std::size_t expected =
        detail::kBinHeaderSize +
        8ull * file.header.dims * file.header.frames;
    if (bytes.size() != expected) {
      throw DataError("'" + path + "' payload truncated or oversized: expected " +
                      std::to_string(expected) + " bytes, got " +
                      std::to_string(bytes.size()));
    }
    file.features.values.resize(file.header.frames, file.header.dims);
    const unsigned char* q = bytes.data() + detail::kBinHeaderSize;
    for (std::uint32_t t = 0; t < file.header.frames; ++t) {
      for (std::uint32_t d = 0; d < file.header.dims; ++d, q += 8) {
        file.features.values(t, d) = detail::get_f64le(q);
      }
    }
  } else {
    std::istringstream text(std::string(bytes.begin(), bytes.end()));
    std::string line;
    bool have_kind = false, have_dims = false, have_frames = false;
    std::vector<double> payload;
    std::size_t row = 0;
    std::size_t line_no = 0;
    while (std::getline(text, line)) {
      ++line_no;
      if (line.empty()) continue;
      if (line[0] == '#') {
        const std::size_t colon = line.find(':');
        if (colon == std::string::npos) continue;
        std::string key = line.substr(1, colon - 1);
        std::string value = line.substr(colon + 1);
        auto trim = [](std::string& s) {
          s.erase(0, s.find_first_not_of(" \t"));
          s.erase(s.find_last_not_of(" \t\r") + 1);
        };
        trim(key);
        trim(value);
        try {
          if (key == "kind") {
            file.header.kind = feature_kind_from_name(value);
            have_kind = true;
          } else if (key == "dims") {
            file.header.dims = static_cast<std::uint32_t>(std::stoul(value));
            have_dims = true;
          } else if (key == "frames") {
            file.header.frames = static_cast<std::uint32_t>(std::stoul(value));
            have_frames = true;
          } else if (key == "hop_ms") {
            file.header.hop_ms = std::stod(value);
          } else if (key == "sample_rate") {
            file.header.sample_rate = static_cast<std::uint32_t>(std::stoul(value));
          } else if (key == "fingerprint") {
            file.header.fingerprint = detail::parse_fingerprint_hex(value);
          }
        } catch (const std::invalid_argument&) {
          throw DataError("'" + path + "' line " + std::to_string(line_no) +
                          ": malformed value for '" + key + "'");
        } catch (const std::out_of_range&) {
          throw DataError("'" + path + "' line " + std::to_string(line_no) +
                          ": value out of range for '" + key + "'");
        }
        continue;
      }
      if (!have_kind || !have_dims || !have_frames) {
        throw DataError("'" + path +
                        "' data rows start before the kind/dims/frames header");
      }
      std::stringstream fields(line);
      std::string field;
      std::size_t col = 0;
      while (std::getline(fields, field, ',')) {
        try {
          payload.push_back(std::stod(field));
        } catch (const std::exception&) {
          throw DataError("'" + path + "' line " + std::to_string(line_no) +
                          ": malformed number '" + field + "'");
        }
        ++col;
      }
      if (col != file.header.dims) {
        throw DataError("'" + path + "' line " + std::to_string(line_no) +
                        ": row has " + std::to_string(col) +
                        " values, header says " +
                        std::to_string(file.header.dims));
      }
      ++row;
    }
    if (!have_kind || !have_dims || !have_frames) {
      throw DataError("'" + path + "' is missing kind/dims/frames header lines");
    }
    if (row != file.header.frames) {
      throw DataError("'" + path + "' has " + std::to_string(row) +
                      " data rows, header says " +
                      std::to_string(file.header.frames));
    }
    file.features.values.resize(file.header.frames, file.header.dims);
    for (std::uint32_t t = 0; t < file.header.frames; ++t) {
      for (std::uint32_t d = 0; d < file.header.dims; ++d) {
        file.features.values(t, d) = payload[t * file.header.dims + d];
      }
    }
  }

  file.features.kind = file.header.kind;
  file.features.frame_hop_ms = file.header.hop_ms;
  return file;
}

/// Convenience wrapper returning just the payload matrix and its kind.
inline FeatureMatrix read_features(const std::string& path) {
  return read_feature_file(path).features;
}

}  // namespace sscf
