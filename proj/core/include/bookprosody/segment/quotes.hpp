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

#ifndef BOOKPROSODY_SEGMENT_QUOTES_HPP_
#define BOOKPROSODY_SEGMENT_QUOTES_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "bookprosody/segment/tokenize.hpp"

namespace bookprosody::segment {

struct QuoteScan {
  /// Quoted spans including their delimiters, in text order.
  std::vector<CharRange> ranges;
  /// Degenerate cases: unmatched openers or closers.
  std::vector<std::string> warnings;
};

/// Finds double-quoted spans. Straight quotes toggle; “ opens and ” closes.
/// Single quotes are ignored. An opener left unmatched at the end of the
/// text closes at the end with a warning; a curly opener seen while a curly
/// span is still open closes the earlier span just before it.
QuoteScan detect_quotes(std::string_view chapter_text);

}  // namespace bookprosody::segment

#endif  // BOOKPROSODY_SEGMENT_QUOTES_HPP_
