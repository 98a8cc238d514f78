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

#include <fstream>
#include <string>
#include <vector>

#include "sscf/error.hpp"
#include "sscf/trajectory.hpp"

namespace sscf {

/// Time-ordered, non-overlapping labeled intervals.
struct LabelFile {
  std::vector<TransitionSegment> segments;
};

/// Splits a segment label into its endpoints: "a-i" becomes ("a", "i");
/// a bare two-character label like "ai" splits down the middle; anything
/// else is kept whole as the starting label.
inline void split_transition_label(const std::string& label,
                                   std::string& from, std::string& to) {
  const std::size_t dash = label.find('-');
  if (dash != std::string::npos) {
    from = label.substr(0, dash);
    to = label.substr(dash + 1);
  } else if (label.size() == 2) {
    from = label.substr(0, 1);
    to = label.substr(1, 1);
  } else {
    from = label;
    to.clear();
  }
}

/// Reads `start_s<TAB>end_s<TAB>label` rows. Lines starting with '#' and
/// blank lines are ignored. Rows must be time-ordered and non-overlapping.
inline LabelFile read_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open label file '" + path + "'");
  }
  LabelFile out;
  std::string line;
  std::size_t line_no = 0;
  std::size_t prev_line = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    const std::size_t tab1 = line.find('\t');
    const std::size_t tab2 =
        tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
    if (tab1 == std::string::npos || tab2 == std::string::npos) {
      throw DataError("'" + path + "' line " + std::to_string(line_no) +
                      ": expected start<TAB>end<TAB>label");
    }
    TransitionSegment seg;
    try {
      seg.start_s = std::stod(line.substr(0, tab1));
      seg.end_s = std::stod(line.substr(tab1 + 1, tab2 - tab1 - 1));
    } catch (const std::exception&) {
      throw DataError("'" + path + "' line " + std::to_string(line_no) +
                      ": malformed time value");
    }
    const std::string label = line.substr(tab2 + 1);
    if (label.empty()) {
      throw DataError("'" + path + "' line " + std::to_string(line_no) +
                      ": empty label");
    }
    split_transition_label(label, seg.label_from, seg.label_to);
    if (seg.start_s < 0.0 || seg.start_s >= seg.end_s) {
      throw DataError("'" + path + "' line " + std::to_string(line_no) +
                      ": non-monotone times " + std::to_string(seg.start_s) +
                      " >= " + std::to_string(seg.end_s));
    }
    if (!out.segments.empty()) {
      const TransitionSegment& prev = out.segments.back();
      if (seg.start_s < prev.end_s) {
        throw DataError("'" + path + "' line " + std::to_string(line_no) +
                        " overlaps line " + std::to_string(prev_line) + " ([" +
                        std::to_string(prev.start_s) + ", " +
                        std::to_string(prev.end_s) + "] vs [" +
                        std::to_string(seg.start_s) + ", " +
                        std::to_string(seg.end_s) + "])");
      }
    }
    out.segments.push_back(seg);
    prev_line = line_no;
  }
  if (in.bad()) {
    throw IoError("read failure on label file '" + path + "'");
  }
  return out;
}

}  // namespace sscf
