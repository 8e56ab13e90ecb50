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

#include "bookprosody/segment/segmenter.hpp"

#include "bookprosody/error.hpp"
#include "bookprosody/segment/phrases.hpp"
#include "bookprosody/segment/quotes.hpp"

namespace bookprosody::segment {

namespace {

struct Draft {
  std::size_t sentence = 0;
  CharRange chars;
  std::size_t words = 0;
};

}  // namespace

void mark_quote_segments(std::span<Segment> segments,
                         std::span<const CharRange> quote_ranges) {
  for (Segment& s : segments) {
    s.is_quote = false;
    for (const CharRange& q : quote_ranges) {
      if (s.chars.overlaps(q)) {
        s.is_quote = true;
        break;
      }
    }
  }
}

std::vector<ParseTree> parse_tree_lines(std::string_view contents) {
  std::vector<ParseTree> trees;
  std::size_t pos = 0;
  while (pos <= contents.size()) {
    std::size_t eol = contents.find('\n', pos);
    if (eol == std::string_view::npos) eol = contents.size();
    std::string_view line = contents.substr(pos, eol - pos);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      trees.push_back(parse_ptb(line));
    }
    pos = eol + 1;
  }
  return trees;
}

SegmentationResult build_segments(const align::AlignedChapter& chapter,
                                  const std::vector<ParseTree>* trees) {
  SegmentationResult result;
  const std::string_view text = chapter.text;

  std::vector<Sentence> sentences;
  std::vector<const ParseTree*> sentence_trees;
  if (trees != nullptr && !trees->empty()) {
    std::vector<ParseTree> usable;
    for (const ParseTree& t : *trees) {
      if (!leaves(t).empty()) usable.push_back(t);
    }
    try {
      sentences = sentences_from_trees(text, usable);
      // One sentence per usable tree, in order.
      for (const ParseTree& t : *trees) {
        if (!leaves(t).empty()) sentence_trees.push_back(&t);
      }
    } catch (const TokenMismatch& e) {
      result.warnings.push_back(std::string("parse trees do not match text, using "
                                            "punctuation-only phrasing: ") +
                                e.what());
      sentences.clear();
      sentence_trees.clear();
    }
  }
  if (sentences.empty()) {
    sentences = split_sentences(text);
    sentence_trees.assign(sentences.size(), nullptr);
  }

  std::vector<Draft> drafts;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    const auto& tokens = sentences[s].tokens;
    std::vector<TokenRange> ranges;
    try {
      ranges = split_phrases(tokens, sentence_trees[s]);
    } catch (const TokenMismatch& e) {
      result.warnings.push_back("sentence " + std::to_string(s) + ": " + e.what());
      ranges = split_phrases(tokens, nullptr);
    }
    for (const TokenRange& r : ranges) {
      drafts.push_back({s, {tokens[r.begin].begin, tokens[r.end - 1].end}, 0});
    }
  }
  if (drafts.empty()) return result;

  // Each word belongs to the last draft starting at or before it.
  std::size_t d = 0;
  for (std::size_t w = 0; w < chapter.words.size(); ++w) {
    while (d + 1 < drafts.size() &&
           drafts[d + 1].chars.begin <= chapter.words[w].char_begin) {
      ++d;
    }
    ++drafts[d].words;
  }

  // Merge word-less drafts into a neighbour within the same sentence.
  std::vector<Draft> merged;
  for (std::size_t i = 0; i < drafts.size();) {
    std::size_t j = i;
    while (j < drafts.size() && drafts[j].sentence == drafts[i].sentence) ++j;
    std::vector<Draft> kept;
    std::optional<std::size_t> pending_begin;
    for (std::size_t k = i; k < j; ++k) {
      Draft draft = drafts[k];
      if (draft.words == 0) {
        if (!kept.empty()) {
          kept.back().chars.end = draft.chars.end;
        } else if (!pending_begin) {
          pending_begin = draft.chars.begin;
        }
        continue;
      }
      if (pending_begin) {
        draft.chars.begin = *pending_begin;
        pending_begin.reset();
      }
      kept.push_back(draft);
    }
    merged.insert(merged.end(), kept.begin(), kept.end());
    i = j;
  }

  std::size_t next_word = 0;
  long sentence_id = -1;
  std::size_t last_sentence = static_cast<std::size_t>(-1);
  for (std::size_t i = 0; i < merged.size(); ++i) {
    const Draft& draft = merged[i];
    if (draft.sentence != last_sentence) {
      ++sentence_id;
      last_sentence = draft.sentence;
    }
    Segment seg;
    seg.segment_id = static_cast<long>(i);
    seg.sentence_id = sentence_id;
    seg.chars = draft.chars;
    seg.text = std::string(text.substr(draft.chars.begin, draft.chars.end - draft.chars.begin));
    seg.word_span = {next_word, next_word + draft.words};
    next_word += draft.words;
    result.segments.push_back(std::move(seg));
  }

  QuoteScan quotes = detect_quotes(text);
  mark_quote_segments(result.segments, quotes.ranges);
  for (std::string& w : quotes.warnings) result.warnings.push_back(std::move(w));
  return result;
}

}  // namespace bookprosody::segment
