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

#ifndef BOOKPROSODY_SEGMENT_SEGMENTER_HPP_
#define BOOKPROSODY_SEGMENT_SEGMENTER_HPP_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bookprosody/align/alignment.hpp"
#include "bookprosody/segment/ptb.hpp"
#include "bookprosody/segment/tokenize.hpp"

namespace bookprosody::segment {

/// (pitch_z, volume_z, rate_z)
using ProsodyTriple = std::array<double, 3>;

/// A phrase: the unit every prosody target and feature row refers to.
struct Segment {
  long segment_id = 0;
  long sentence_id = 0;
  std::string text;
  CharRange chars;
  align::WordSpan word_span;
  bool is_quote = false;
  std::optional<ProsodyTriple> prosody;
};

struct SegmentationResult {
  std::vector<Segment> segments;
  /// Non-fatal problems: tree fallbacks, quote warnings.
  std::vector<std::string> warnings;
};

/// Splits a chapter into phrase segments.
///
/// With `trees` (one per sentence, in text order) sentence boundaries and
/// tokens come from the tree leaves and phrases use the S-constituent rule;
/// if the leaves cannot be located in the text the whole chapter falls back
/// to rule-based sentence splitting and punctuation-only phrasing, with a
/// warning. Words are assigned to the last segment starting at or before
/// them, so word spans partition the chapter's words. Segments that end up
/// without words merge into a neighbour within their sentence; sentences
/// without any word are dropped. Quote flags are set from detect_quotes.
SegmentationResult build_segments(const align::AlignedChapter& chapter,
                                  const std::vector<ParseTree>* trees = nullptr);

/// Sets is_quote iff the segment's characters overlap any quote range.
void mark_quote_segments(std::span<Segment> segments,
                         std::span<const CharRange> quote_ranges);

/// Reads a trees file: one bracketed tree per non-empty line.
std::vector<ParseTree> parse_tree_lines(std::string_view contents);

}  // namespace bookprosody::segment

#endif  // BOOKPROSODY_SEGMENT_SEGMENTER_HPP_
