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

#ifndef BOOKPROSODY_SEGMENT_PHRASES_HPP_
#define BOOKPROSODY_SEGMENT_PHRASES_HPP_

#include <span>
#include <vector>

#include "bookprosody/segment/ptb.hpp"
#include "bookprosody/segment/tokenize.hpp"

namespace bookprosody::segment {

/// Half-open token index range within one sentence.
struct TokenRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool operator==(const TokenRange&) const = default;
};

/// True for tokens after which a phrase boundary is placed:
/// , ; : . ! ? and the dash and ellipsis spellings.
bool is_boundary_punct(const Token& token);

/// Splits one sentence into phrases.
///
/// Candidate cuts fall (a) on both edges of every maximal inner S
/// constituent (an S node below the root with no S ancestor other than the
/// root) and (b) after boundary punctuation, moved past any closing quote or
/// bracket glued to it. Cuts at adjacent token positions collapse to one,
/// preferring the last punctuation cut of the run; a run touching the
/// sentence end is absorbed by it, and an S-edge run touching the start is
/// dropped. Without a tree only rule (b) applies.
///
/// The returned ranges partition [0, tokens.size()). Throws TokenMismatch
/// if the tree leaves do not match the tokens.
std::vector<TokenRange> split_phrases(std::span<const Token> tokens,
                                      const ParseTree* tree = nullptr);

}  // namespace bookprosody::segment

#endif  // BOOKPROSODY_SEGMENT_PHRASES_HPP_
