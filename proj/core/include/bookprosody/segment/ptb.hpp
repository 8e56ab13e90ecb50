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

#ifndef BOOKPROSODY_SEGMENT_PTB_HPP_
#define BOOKPROSODY_SEGMENT_PTB_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bookprosody::segment {

/// Constituency tree. Leaves carry a token and no children; a preterminal
/// such as `(PRP I)` is a single leaf labelled PRP.
struct ParseTree {
  std::string label;
  std::vector<ParseTree> children;
  std::optional<std::string> token;

  bool is_leaf() const noexcept { return token.has_value(); }
};

/// Reads one Penn-Treebank bracketed tree. Bracket escapes (-LRB-, -RRB-,
/// -LCB-, -RCB-, -LSB-, -RSB-) in tokens are restored.
///
/// Throws ParseError with the byte position on empty input, unbalanced
/// brackets, or trailing text after the tree.
ParseTree parse_ptb(std::string_view bracketed);

/// Leaf tokens, left to right.
std::vector<std::string> leaves(const ParseTree& tree);

/// Bracketed rendering with escapes re-applied.
std::string to_string(const ParseTree& tree);

/// True for `S` and function-tagged variants such as `S-TPC`.
bool is_sentence_label(std::string_view label);

}  // namespace bookprosody::segment

#endif  // BOOKPROSODY_SEGMENT_PTB_HPP_
