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

#ifndef BOOKPROSODY_ALIGN_ALIGNMENT_HPP_
#define BOOKPROSODY_ALIGN_ALIGNMENT_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace bookprosody::align {

/// Maximum tolerated gap between the phone-duration sum and the word span.
inline constexpr double kPhoneSumTolerance = 0.02;

enum class WordStatus { kAligned, kNotFound };

struct Phone {
  std::string label;
  double duration_s = 0.0;

  bool operator==(const Phone&) const = default;
};

struct AlignedWord {
  std::string token;
  WordStatus status = WordStatus::kNotFound;
  double start_s = 0.0;
  double end_s = 0.0;
  std::vector<Phone> phones;
  /// Byte offsets [char_begin, char_end) into AlignedChapter::text.
  std::size_t char_begin = 0;
  std::size_t char_end = 0;
  /// Phone durations disagree with the word span by more than
  /// kPhoneSumTolerance; the word is excluded from rate statistics.
  bool duration_mismatch = false;

  bool aligned() const noexcept { return status == WordStatus::kAligned; }
  bool operator==(const AlignedWord&) const = default;
};

struct AlignedChapter {
  std::string book_id;
  std::string chapter_id;
  std::string text;
  std::vector<AlignedWord> words;
  std::string audio_path;

  bool operator==(const AlignedChapter&) const = default;
};

/// Half-open index range [begin, end) into AlignedChapter::words.
struct WordSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  bool empty() const noexcept { return end <= begin; }
  bool operator==(const WordSpan&) const = default;
};

/// Parses forced-aligner output (the Gentle JSON schema) against the text it
/// was aligned to.
///
/// Each entry of `words` becomes an AlignedWord; entries whose `case` is not
/// "success" are kept as not-found words without timing. Character offsets
/// come from `startOffset`/`endOffset` when present, otherwise from a
/// case-insensitive left-to-right search for the token.
///
/// Throws SchemaError when `words` is missing or an entry is malformed or
/// aligned words go backwards in time, and OffsetError when offsets fall
/// outside the text or fail to increase.
AlignedChapter parse_alignment(std::string_view json_bytes,
                               std::string chapter_text);

/// (start of first aligned word, end of last aligned word) inside `span`.
/// Throws NoTimingInfo if the span holds no aligned word.
std::pair<double, double> segment_time_span(const AlignedChapter& chapter,
                                            WordSpan span);

/// Internal normalized representation; round-trips exactly.
nlohmann::json to_json(const AlignedChapter& chapter);
AlignedChapter chapter_from_json(const nlohmann::json& j);

}  // namespace bookprosody::align

#endif  // BOOKPROSODY_ALIGN_ALIGNMENT_HPP_
