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

#ifndef BOOKPROSODY_SEGMENT_TOKENIZE_HPP_
#define BOOKPROSODY_SEGMENT_TOKENIZE_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "bookprosody/segment/ptb.hpp"

namespace bookprosody::segment {

enum class TokenKind {
  kWord,
  kPunct,
  /// Double-quote dialogue delimiter: ", “ or ”.
  kQuote,
};

struct Token {
  std::string text;
  std::size_t begin = 0;  // byte offsets into the chapter text
  std::size_t end = 0;
  TokenKind kind = TokenKind::kWord;
};

/// Byte range [begin, end) of chapter text.
struct CharRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool overlaps(const CharRange& o) const noexcept {
    return begin < o.end && o.begin < end;
  }
  bool operator==(const CharRange&) const = default;
};

struct Sentence {
  CharRange range;
  std::vector<Token> tokens;
};

/// Splits UTF-8 text into word and punctuation tokens. Words keep internal
/// apostrophes, hyphens and decimal points; the abbreviations Mr., Mrs.,
/// Dr., St. (and Ms.) keep their period. Curly quotes, em/en dashes, `--`,
/// `...` and `…` are single tokens.
std::vector<Token> tokenize(std::string_view text);

/// Sentence boundaries: a run of `.`, `!` or `?` (plus any closing quote or
/// bracket attached to it) followed by whitespace and then an uppercase
/// letter or a quote delimiter. A blank line always ends a sentence.
std::vector<Sentence> split_sentences(std::string_view text);

/// Sentences taken from externally parsed trees, one tree per sentence in
/// text order. Each leaf is located in `text` left to right. Throws
/// TokenMismatch when a leaf cannot be found.
std::vector<Sentence> sentences_from_trees(std::string_view text,
                                           const std::vector<ParseTree>& trees);

/// Leaf/token equality modulo Penn-Treebank quote and dash spellings.
bool token_matches_leaf(std::string_view token, std::string_view leaf);

}  // namespace bookprosody::segment

#endif  // BOOKPROSODY_SEGMENT_TOKENIZE_HPP_
