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

#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bookprosody/align/alignment.hpp"
#include "bookprosody/error.hpp"
#include "bookprosody/segment/phrases.hpp"
#include "bookprosody/segment/ptb.hpp"
#include "bookprosody/segment/quotes.hpp"
#include "bookprosody/segment/segmenter.hpp"
#include "bookprosody/segment/tokenize.hpp"

using namespace bookprosody;
using namespace bookprosody::segment;

namespace {

constexpr const char* kCoordinated =
    "(S (S (NP (PRP He)) (VP (VBD left))) (, ,) (CC and) (S (NP (PRP she)) (VP (VBD stayed))) "
    "(. .))";

std::vector<std::string> phrase_texts(std::string_view text, const ParseTree* tree = nullptr) {
  const auto tokens = tokenize(text);
  std::vector<std::string> out;
  for (const auto& r : split_phrases(tokens, tree)) {
    const auto begin = tokens[r.begin].begin;
    const auto end = tokens[r.end - 1].end;
    out.emplace_back(text.substr(begin, end - begin));
  }
  return out;
}

// Gentle-style alignment with every word token aligned one after another.
align::AlignedChapter align_all_words(const std::string& text) {
  nlohmann::json words = nlohmann::json::array();
  double t = 0.0;
  for (const auto& tok : tokenize(text)) {
    if (tok.kind != TokenKind::kWord) continue;
    words.push_back({{"word", tok.text}, {"case", "success"}, {"start", t}, {"end", t + 0.2},
                     {"startOffset", tok.begin}, {"endOffset", tok.end},
                     {"phones", {{{"phone", "ah"}, {"duration", 0.2}}}}});
    t += 0.3;
  }
  return align::parse_alignment(nlohmann::json{{"words", words}}.dump(), text);
}

}  // namespace

TEST_CASE("parse_ptb: two-leaf tree") {
  const auto tree = parse_ptb("(S (NP (PRP I)) (VP (VBD ran)))");
  CHECK(tree.label == "S");
  CHECK(leaves(tree) == std::vector<std::string>{"I", "ran"});
  CHECK(to_string(parse_ptb(to_string(tree))) == to_string(tree));
}

TEST_CASE("parse_ptb: malformed input") {
  try {
    parse_ptb("((");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
  }
  CHECK_THROWS_AS(parse_ptb(""), ParseError);
  CHECK_THROWS_AS(parse_ptb("(S (NP x)"), ParseError);
  CHECK_THROWS_AS(parse_ptb("(S x))"), ParseError);
}

TEST_CASE("parse_ptb: bracket escapes are restored") {
  const auto tree = parse_ptb("(S (-LRB- -LRB-) (NN x) (-RRB- -RRB-))");
  CHECK(leaves(tree) == std::vector<std::string>{"(", "x", ")"});
  CHECK(to_string(tree).find("-LRB-") != std::string::npos);
}

TEST_CASE("parse_ptb: nested sentence constituents") {
  const auto tree = parse_ptb(kCoordinated);
  int inner = 0;
  for (const auto& child : tree.children) inner += is_sentence_label(child.label) ? 1 : 0;
  CHECK(inner == 2);
  CHECK(is_sentence_label("S-TPC"));
  CHECK_FALSE(is_sentence_label("SBAR"));
}

TEST_CASE("split_phrases: examples") {
  SUBCASE("inner S edges coincide with the comma") {
    const auto tree = parse_ptb(kCoordinated);
    CHECK(phrase_texts("He left, and she stayed.", &tree) ==
          std::vector<std::string>{"He left,", "and she stayed."});
  }
  SUBCASE("single token") { CHECK(phrase_texts("Yes.") == std::vector<std::string>{"Yes."}); }
  SUBCASE("punctuation only") {
    CHECK(phrase_texts("Stop! Now!") == std::vector<std::string>{"Stop!", "Now!"});
  }
  SUBCASE("inner S without punctuation still splits") {
    const auto tree = parse_ptb(
        "(S (NP (PRP I)) (VP (VBD knew) (SBAR (S (NP (PRP he)) (VP (VBD lied))))) (. .))");
    CHECK(phrase_texts("I knew he lied.", &tree) ==
          std::vector<std::string>{"I knew", "he lied."});
  }
  SUBCASE("closing quote stays with its punctuation") {
    CHECK(phrase_texts("\"Go home,\" she said.") ==
          std::vector<std::string>{"\"Go home,\"", "she said."});
  }
}

TEST_CASE("split_phrases: leaf mismatch") {
  const auto tree = parse_ptb("(S (NN a) (NN b))");
  const auto tokens = tokenize("a c");
  CHECK_THROWS_AS(split_phrases(tokens, &tree), TokenMismatch);
  const auto short_tokens = tokenize("a");
  CHECK_THROWS_AS(split_phrases(short_tokens, &tree), TokenMismatch);
}

TEST_CASE("tokenize and split_sentences") {
  const auto tokens = tokenize("Mr. Smith's well-known dog -- barked...");
  std::vector<std::string> texts;
  for (const auto& t : tokens) texts.push_back(t.text);
  CHECK(texts == std::vector<std::string>{"Mr.", "Smith's", "well-known", "dog", "--", "barked",
                                          "..."});
  const std::string text = "Dr. Who came. \"Hi!\" She left? yes. Then\n\nnew one";
  const auto sentences = split_sentences(text);
  std::vector<std::string> spans;
  for (const auto& s : sentences) {
    spans.emplace_back(text.substr(s.range.begin, s.range.end - s.range.begin));
  }
  CHECK(spans == std::vector<std::string>{"Dr. Who came.", "\"Hi!\"", "She left? yes.", "Then",
                                          "new one"});
}

TEST_CASE("detect_quotes: examples") {
  SUBCASE("straight quotes") {
    const std::string text = R"(She said, "Go home." Then left.)";
    const auto scan = detect_quotes(text);
    REQUIRE(scan.ranges.size() == 1);
    CHECK(text.substr(scan.ranges[0].begin, scan.ranges[0].end - scan.ranges[0].begin) ==
          "\"Go home.\"");
    CHECK(scan.warnings.empty());
  }
  SUBCASE("no quotes") { CHECK(detect_quotes("Plain text, nothing quoted.").ranges.empty()); }
  SUBCASE("both delimiter alphabets") {
    CHECK(detect_quotes("\xE2\x80\x9CMixed\xE2\x80\x9D and \"straight\"").ranges.size() == 2);
  }
  SUBCASE("single quotes are ignored") { CHECK(detect_quotes("it's 'fine'").ranges.empty()); }
  SUBCASE("unmatched opener closes at the end with a warning") {
    const std::string text = "He said \"wait";
    const auto scan = detect_quotes(text);
    REQUIRE(scan.ranges.size() == 1);
    CHECK(scan.ranges[0].end == text.size());
    CHECK(scan.warnings.size() == 1);
  }
}

TEST_CASE("mark_quote_segments") {
  std::vector<Segment> segs(3);
  segs[0].chars = {10, 15};  // inside
  segs[1].chars = {0, 5};    // outside
  segs[2].chars = {18, 25};  // straddles the end
  const std::vector<CharRange> quotes{{8, 20}};
  mark_quote_segments(segs, quotes);
  CHECK(segs[0].is_quote);
  CHECK_FALSE(segs[1].is_quote);
  CHECK(segs[2].is_quote);
}

TEST_CASE("build_segments: words partition and quote flags") {
  const std::string text = "She waited, then spoke. \"Come here, now!\" Nobody moved.";
  const auto chapter = align_all_words(text);
  const auto result = build_segments(chapter);
  std::vector<std::string> texts;
  for (const auto& s : result.segments) texts.push_back(s.text);
  CHECK(texts == std::vector<std::string>{"She waited,", "then spoke.", "\"Come here,",
                                          "now!\"", "Nobody moved."});
  CHECK(result.segments[2].is_quote);
  CHECK(result.segments[3].is_quote);
  CHECK_FALSE(result.segments[4].is_quote);
  std::size_t next = 0;
  for (const auto& s : result.segments) {
    CHECK(s.word_span.begin == next);
    CHECK_FALSE(s.word_span.empty());
    next = s.word_span.end;
  }
  CHECK(next == chapter.words.size());
  CHECK(result.segments[3].sentence_id == result.segments[2].sentence_id);
}

TEST_CASE("build_segments: trees drive phrasing, bad trees fall back") {
  const std::string text = "He left, and she stayed. Fine.";
  const auto chapter = align_all_words(text);
  auto trees = parse_tree_lines(std::string(kCoordinated) + "\n(S (UH Fine) (. .))\n");
  REQUIRE(trees.size() == 2);
  const auto with_tree = build_segments(chapter, &trees);
  CHECK(with_tree.segments.size() == 3);
  CHECK(with_tree.warnings.empty());

  auto wrong = parse_tree_lines("(S (NN Unrelated) (NN words))\n");
  const auto fallback = build_segments(chapter, &wrong);
  CHECK(fallback.segments.size() == 3);
  CHECK_FALSE(fallback.warnings.empty());
}

TEST_CASE("property: phrases partition every sentence") {
  std::mt19937_64 rng(31);
  const std::vector<std::string> pieces{"alpha", "beta", "gamma", ",", ";", ":", "!", "?",
                                        "--",    "\"",   "delta", "x", "...", "."};
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::uniform_int_distribution<int> length(1, 25);
  for (int trial = 0; trial < 300; ++trial) {
    std::string text = "Start";
    const int n = length(rng);
    for (int i = 0; i < n; ++i) text += " " + pieces[pick(rng)];
    const auto tokens = tokenize(text);
    const auto ranges = split_phrases(tokens);
    std::size_t next = 0;
    for (const auto& r : ranges) {
      CHECK(r.begin == next);
      CHECK(r.end > r.begin);
      next = r.end;
    }
    CHECK(next == tokens.size());
  }
}

TEST_CASE("property: a tree whose only S is the root matches punctuation-only phrasing") {
  std::mt19937_64 rng(32);
  const std::vector<std::string> words{"red", "fox", "ran", "far", "away", "then", "slept"};
  const std::vector<std::string> puncts{",", ";", ":", "!", "?", "."};
  std::uniform_int_distribution<std::size_t> pick_w(0, words.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_p(0, puncts.size() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    std::string tree = "(ROOT (S";
    const int n = 1 + static_cast<int>(unit(rng) * 15);
    for (int i = 0; i < n; ++i) {
      const auto& w = words[pick_w(rng)];
      text += (text.empty() ? "" : " ") + w;
      tree += " (NP (NN " + w + "))";
      if (unit(rng) < 0.3) {
        const auto& p = puncts[pick_p(rng)];
        text += p;
        tree += " (" + p + " " + p + ")";
      }
    }
    tree += "))";
    const auto parsed = parse_ptb(tree);
    const auto tokens = tokenize(text);
    CHECK(split_phrases(tokens, &parsed) == split_phrases(tokens));
  }
}

TEST_CASE("property: balanced quotes give half as many spans as delimiters") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    int delimiters = 0;
    const int n = static_cast<int>(unit(rng) * 8);
    for (int i = 0; i < n; ++i) {
      text += "words here ";
      const bool curly = unit(rng) < 0.5;
      text += curly ? "\xE2\x80\x9C" : "\"";
      text += "said it's so";
      text += curly ? "\xE2\x80\x9D" : "\"";
      text += " and more. ";
      delimiters += 2;
    }
    const auto scan = detect_quotes(text);
    CHECK(static_cast<int>(scan.ranges.size()) * 2 == delimiters);
    CHECK(scan.warnings.empty());
  }
}
