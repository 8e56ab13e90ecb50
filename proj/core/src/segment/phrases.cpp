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

#include "bookprosody/segment/phrases.hpp"

#include <array>
#include <map>
#include <optional>
#include <string_view>

#include "bookprosody/error.hpp"

namespace bookprosody::segment {

namespace {

constexpr std::array<std::string_view, 11> kBoundaryPunct{
    ",", ";", ":", ".", "!", "?", "...", "--",
    "\xE2\x80\x94",  // em dash
    "\xE2\x80\x93",  // –
    "\xE2\x80\xA6",  // …
};

bool is_glued_closer(const Token& t) {
  return t.kind == TokenKind::kQuote || t.text == ")" || t.text == "]" ||
         t.text == "'" || t.text == "\xE2\x80\x99";
}

const ParseTree& effective_root(const ParseTree& tree) {
  const ParseTree* node = &tree;
  while (!node->is_leaf() && node->children.size() == 1 &&
         (node->label.empty() || node->label == "ROOT" || node->label == "TOP")) {
    node = &node->children.front();
  }
  return *node;
}

// Assigns leaf index ranges while walking below the root; records edges of
// every S node that has no S ancestor other than the root.
std::size_t collect_s_edges(const ParseTree& node, std::size_t first_leaf,
                            std::vector<std::pair<std::size_t, std::size_t>>& spans) {
  if (node.is_leaf()) return 1;
  std::size_t count = 0;
  for (const ParseTree& child : node.children) {
    const std::size_t start = first_leaf + count;
    std::size_t n = 0;
    if (!child.is_leaf() && is_sentence_label(child.label)) {
      n = leaves(child).size();
      if (n > 0) spans.emplace_back(start, start + n - 1);
    } else {
      n = collect_s_edges(child, start, spans);
    }
    count += n;
  }
  return count;
}

}  // namespace

bool is_boundary_punct(const Token& token) {
  for (std::string_view p : kBoundaryPunct) {
    if (token.text == p) return true;
  }
  return false;
}

std::vector<TokenRange> split_phrases(std::span<const Token> tokens,
                                      const ParseTree* tree) {
  const std::size_t n = tokens.size();
  if (n == 0) return {};

  // cut position p means "boundary after token p"; value = is punctuation cut
  std::map<std::size_t, bool> cuts;

  if (tree != nullptr) {
    const auto leaf_tokens = leaves(*tree);
    if (leaf_tokens.size() != n) {
      throw TokenMismatch("tree has " + std::to_string(leaf_tokens.size()) +
                          " leaves but sentence has " + std::to_string(n) + " tokens");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!token_matches_leaf(tokens[i].text, leaf_tokens[i])) {
        throw TokenMismatch("token " + std::to_string(i) + " '" + tokens[i].text +
                            "' does not match leaf '" + leaf_tokens[i] + "'");
      }
    }
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    collect_s_edges(effective_root(*tree), 0, spans);
    for (const auto& [first, last] : spans) {
      if (first > 0) cuts.emplace(first - 1, false);
      cuts.emplace(last, false);
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!is_boundary_punct(tokens[i])) continue;
    std::size_t p = i;
    while (p + 1 < n && tokens[p + 1].begin == tokens[p].end &&
           is_glued_closer(tokens[p + 1])) {
      ++p;
    }
    cuts[p] = true;
  }

  // The sentence end is a fixed punctuation-strength boundary.
  cuts[n - 1] = true;

  std::vector<std::size_t> kept;
  auto it = cuts.begin();
  while (it != cuts.end()) {
    // Gather a run of adjacent cut positions.
    std::vector<std::pair<std::size_t, bool>> run{*it};
    auto next = std::next(it);
    while (next != cuts.end() && next->first == run.back().first + 1) {
      run.push_back(*next);
      ++next;
    }
    it = next;

    if (run.back().first == n - 1) {
      kept.push_back(n - 1);
      continue;
    }
    std::optional<std::size_t> choice;
    for (const auto& [pos, punct] : run) {
      if (punct) choice = pos;
    }
    if (!choice) {
      if (run.front().first == 0) continue;
      choice = run.back().first;
    }
    kept.push_back(*choice);
  }

  std::vector<TokenRange> ranges;
  std::size_t begin = 0;
  for (std::size_t cut : kept) {
    ranges.push_back({begin, cut + 1});
    begin = cut + 1;
  }
  return ranges;
}

}  // namespace bookprosody::segment
