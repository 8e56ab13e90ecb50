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

#include <fstream>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

#include "bookprosody/align/alignment.hpp"
#include "bookprosody/align/manifest.hpp"
#include "bookprosody/error.hpp"
#include "fixture_corpus.hpp"

using namespace bookprosody;
using namespace bookprosody::align;
using nlohmann::json;

namespace {

json success(const std::string& word, double start, double end, json phones) {
  return {{"word", word}, {"case", "success"}, {"start", start}, {"end", end}, {"phones", phones}};
}

}  // namespace

TEST_CASE("parse_alignment: single aligned word") {
  const json doc = {
      {"words",
       {success("Hello", 0.5, 0.9, {{{"phone", "hh"}, {"duration", 0.2}},
                                    {{"phone", "ah"}, {"duration", 0.2}}})}}};
  const auto ch = parse_alignment(doc.dump(), "Hello");
  REQUIRE(ch.words.size() == 1);
  const auto& w = ch.words[0];
  CHECK(w.aligned());
  CHECK(w.start_s == 0.5);
  CHECK(w.end_s == 0.9);
  REQUIRE(w.phones.size() == 2);
  CHECK(w.phones[0].duration_s + w.phones[1].duration_s ==
        doctest::Approx(w.end_s - w.start_s).epsilon(1e-12));
  CHECK_FALSE(w.duration_mismatch);
  CHECK(w.char_begin == 0);
  CHECK(w.char_end == 5);
}

TEST_CASE("parse_alignment: empty words array") {
  const auto ch = parse_alignment(R"({"words": []})", "Some text.");
  CHECK(ch.words.empty());
  CHECK(ch.text == "Some text.");
}

TEST_CASE("parse_alignment: not-found-in-audio words keep no timing") {
  const json doc = {{"words",
                     {success("a", 0.1, 0.2, {{{"phone", "ah"}, {"duration", 0.1}}}),
                      {{"word", "b"}, {"case", "not-found-in-audio"}}}}};
  const auto ch = parse_alignment(doc.dump(), "a b");
  REQUIRE(ch.words.size() == 2);
  CHECK(ch.words[1].status == WordStatus::kNotFound);
  CHECK(ch.words[1].phones.empty());
  CHECK(ch.words[1].char_begin == 2);
}

TEST_CASE("parse_alignment: offsets from the aligner take precedence") {
  const json doc = {{"words",
                     {{{"word", "cat"}, {"case", "success"}, {"start", 0.0}, {"end", 0.3},
                       {"startOffset", 8}, {"endOffset", 11}}}}};
  const auto ch = parse_alignment(doc.dump(), "The cat cat.");
  REQUIRE(ch.words.size() == 1);
  CHECK(ch.words[0].char_begin == 8);
}

TEST_CASE("parse_alignment: greedy matching is case-insensitive and skips word interiors") {
  const json doc = {{"words",
                     {success("the", 0.0, 0.1, json::array()),
                      success("cat", 0.2, 0.3, json::array())}}};
  const auto ch = parse_alignment(doc.dump(), "Then THE cat.");
  REQUIRE(ch.words.size() == 2);
  CHECK(ch.words[0].char_begin == 5);
  CHECK(ch.words[1].char_begin == 9);
}

TEST_CASE("parse_alignment: phone sum mismatch flags the word") {
  const json doc = {{"words", {success("x", 0.0, 0.5, {{{"phone", "k"}, {"duration", 0.1}}})}}};
  const auto ch = parse_alignment(doc.dump(), "x");
  CHECK(ch.words[0].duration_mismatch);
}

TEST_CASE("parse_alignment: error paths") {
  SUBCASE("missing words key") {
    CHECK_THROWS_AS(parse_alignment(R"({"transcript": "x"})", "x"), SchemaError);
  }
  SUBCASE("not JSON") { CHECK_THROWS_AS(parse_alignment("{", "x"), SchemaError); }
  SUBCASE("offsets outside the text") {
    const json doc = {{"words", {{{"word", "x"}, {"case", "success"}, {"start", 0.0},
                                  {"end", 0.1}, {"startOffset", 3}, {"endOffset", 9}}}}};
    try {
      parse_alignment(doc.dump(), "x y");
      FAIL("expected OffsetError");
    } catch (const OffsetError& e) {
      CHECK(e.word_index() == 0);
    }
  }
  SUBCASE("token absent from text reports its index") {
    const json doc = {{"words", {success("a", 0.0, 0.1, json::array()),
                                 success("zebra", 0.2, 0.3, json::array())}}};
    try {
      parse_alignment(doc.dump(), "a b");
      FAIL("expected OffsetError");
    } catch (const OffsetError& e) {
      CHECK(e.word_index() == 1);
    }
  }
  SUBCASE("aligned words going back in time") {
    const json doc = {{"words", {success("a", 1.0, 1.1, json::array()),
                                 success("b", 0.5, 0.6, json::array())}}};
    CHECK_THROWS_AS(parse_alignment(doc.dump(), "a b"), SchemaError);
  }
  SUBCASE("success without timestamps") {
    const json doc = {{"words", {{{"word", "a"}, {"case", "success"}}}}};
    CHECK_THROWS_AS(parse_alignment(doc.dump(), "a"), SchemaError);
  }
}

TEST_CASE("segment_time_span") {
  const json doc = {{"words",
                     {success("a", 0.5, 0.9, json::array()), success("b", 1.0, 1.4, json::array()),
                      {{"word", "c"}, {"case", "not-found-in-audio"}},
                      {{"word", "d"}, {"case", "not-found-in-audio"}},
                      success("e", 2.0, 2.3, json::array())}}};
  const auto ch = parse_alignment(doc.dump(), "a b c d e");
  CHECK(segment_time_span(ch, {0, 2}) == std::pair{0.5, 1.4});
  CHECK(segment_time_span(ch, {4, 5}) == std::pair{2.0, 2.3});
  CHECK(segment_time_span(ch, {1, 5}) == std::pair{1.0, 2.3});
  CHECK_THROWS_AS(segment_time_span(ch, {2, 4}), NoTimingInfo);
}

TEST_CASE("property: internal JSON round trip and monotone starts") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::string text;
    json words = json::array();
    double t = 0.0;
    const int n = 1 + static_cast<int>(unit(rng) * 30);
    for (int i = 0; i < n; ++i) {
      const std::string token = "w" + std::to_string(i);
      if (!text.empty()) text += ' ';
      text += token;
      if (unit(rng) < 0.2) {
        words.push_back({{"word", token}, {"case", "not-found-in-audio"}});
        continue;
      }
      const double d1 = 0.01 + unit(rng) * 0.1;
      const double d2 = 0.01 + unit(rng) * 0.1;
      words.push_back(success(token, t, t + d1 + d2,
                              {{{"phone", "p_B"}, {"duration", d1}},
                               {{"phone", "q_E"}, {"duration", d2}}}));
      t += d1 + d2 + unit(rng) * 0.2;
    }
    auto ch = parse_alignment(json{{"words", words}}.dump(), text);
    ch.book_id = "b";
    ch.chapter_id = "c";
    ch.audio_path = "x.wav";
    CHECK(chapter_from_json(to_json(ch)) == ch);
    double last = -1.0;
    for (const auto& w : ch.words) {
      if (!w.aligned()) continue;
      CHECK(w.start_s >= last);
      last = w.start_s;
    }
  }
}

TEST_CASE("manifest and dataset discovery") {
  testing::TempDir dir;
  testing::FixtureOptions opt;
  opt.books = 2;
  opt.chapters_per_book = 2;
  opt.sentences_per_chapter = 3;
  opt.with_embeddings = false;
  opt.with_characters = false;
  testing::write_fixture_corpus(dir.path(), opt);

  const auto entries = scan_dataset(dir.path());
  REQUIRE(entries.size() == 4);
  CHECK(entries[0].book_id == "book01");
  CHECK(entries[0].chapter_id == "ch01");
  CHECK(entries[3].book_id == "book02");
  CHECK(entries[0].embeddings_path.empty());
  const auto chapter = load_chapter(entries[0]);
  CHECK_FALSE(chapter.words.empty());
  CHECK(chapter.book_id == "book01");

  const json manifest = json::array(
      {{{"book_id", "x"}, {"chapter_id", "1"}, {"text_path", "books/book01/ch01.txt"},
        {"align_path", "books/book01/ch01.json"}, {"audio_path", "books/book01/ch01.wav"}}});
  std::ofstream(dir.path() / "manifest.json") << manifest.dump();
  const auto loaded = load_manifest(dir.path() / "manifest.json");
  REQUIRE(loaded.size() == 1);
  CHECK(loaded[0].text_path == dir.path() / "books/book01/ch01.txt");
  CHECK(load_chapter(loaded[0]).words == chapter.words);

  std::ofstream(dir.path() / "bad.json") << R"([{"book_id": "x"}])";
  CHECK_THROWS_AS(load_manifest(dir.path() / "bad.json"), SchemaError);
  CHECK_THROWS_AS(scan_dataset(dir.path() / "nowhere"), IoError);
}
