// Copyright (c) 2026 The bookprosody Authors
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

#include "bookprosody/segment/quotes.hpp"

#include <optional>

namespace bookprosody::segment {

namespace {

constexpr std::string_view kOpenCurly = "\xE2\x80\x9C";
constexpr std::string_view kCloseCurly = "\xE2\x80\x9D";

enum class Delim { kStraight, kCurly };

}  // namespace

QuoteScan detect_quotes(std::string_view text) {
  QuoteScan scan;
  std::optional<std::size_t> open_at;
  Delim open_kind = Delim::kStraight;

  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == '"') {
      if (!open_at) {
        open_at = pos;
        open_kind = Delim::kStraight;
      } else if (open_kind == Delim::kStraight) {
        scan.ranges.push_back({*open_at, pos + 1});
        open_at.reset();
      }
      ++pos;
    } else if (text.substr(pos, 3) == kOpenCurly) {
      if (open_at && open_kind == Delim::kCurly) {
        scan.warnings.push_back("quote opened at byte " + std::to_string(*open_at) +
                                " closed implicitly by a new opener at byte " +
                                std::to_string(pos));
        scan.ranges.push_back({*open_at, pos});
        open_at.reset();
      }
      if (!open_at) {
        open_at = pos;
        open_kind = Delim::kCurly;
      }
      pos += 3;
    } else if (text.substr(pos, 3) == kCloseCurly) {
      if (open_at && open_kind == Delim::kCurly) {
        scan.ranges.push_back({*open_at, pos + 3});
        open_at.reset();
      } else if (!open_at) {
        scan.warnings.push_back("unmatched closing quote at byte " + std::to_string(pos));
      }
      pos += 3;
    } else {
      ++pos;
    }
  }
  if (open_at) {
    scan.warnings.push_back("quote opened at byte " + std::to_string(*open_at) +
                            " never closed; closing at end of text");
    scan.ranges.push_back({*open_at, text.size()});
  }
  return scan;
}

}  // namespace bookprosody::segment
