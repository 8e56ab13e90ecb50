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

#include "bookprosody/align/alignment.hpp"

#include <cctype>
#include <cmath>
#include <optional>

#include <nlohmann/json.hpp>

#include "bookprosody/error.hpp"

namespace bookprosody::align {

namespace {

using nlohmann::json;

bool is_word_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) != 0 || u >= 0x80 || c == '\'';
}

bool iequal_at(std::string_view text, std::size_t pos, std::string_view token) {
  if (pos + token.size() > text.size()) return false;
  for (std::size_t i = 0; i < token.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(text[pos + i])) !=
        std::tolower(static_cast<unsigned char>(token[i]))) {
      return false;
    }
  }
  return true;
}

// Next case-insensitive occurrence of `token` at or after `from` that is not
// embedded inside a longer word.
std::optional<std::size_t> find_token(std::string_view text, std::string_view token,
                                      std::size_t from) {
  if (token.empty()) return std::nullopt;
  for (std::size_t pos = from; pos + token.size() <= text.size(); ++pos) {
    if (!iequal_at(text, pos, token)) continue;
    const bool left_ok = pos == 0 || !is_word_char(text[pos - 1]) ||
                         !is_word_char(token.front());
    const std::size_t after = pos + token.size();
    const bool right_ok = after == text.size() || !is_word_char(text[after]) ||
                          !is_word_char(token.back());
    if (left_ok && right_ok) return pos;
  }
  return std::nullopt;
}

double number_field(const json& entry, const char* key, std::size_t index) {
  const auto it = entry.find(key);
  if (it == entry.end() || !it->is_number()) {
    throw SchemaError("word " + std::to_string(index) + ": missing numeric '" +
                      key + "'");
  }
  return it->get<double>();
}

AlignedChapter parse_alignment_impl(std::string_view json_bytes,
                                    std::string chapter_text) {
  json doc;
  try {
    doc = json::parse(json_bytes);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("alignment is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("words") || !doc["words"].is_array()) {
    throw SchemaError("alignment JSON has no 'words' array");
  }

  AlignedChapter chapter;
  chapter.text = std::move(chapter_text);
  const std::string_view text = chapter.text;

  std::size_t cursor = 0;
  std::optional<std::size_t> last_begin;
  std::optional<double> last_start;

  const auto& entries = doc["words"];
  for (std::size_t index = 0; index < entries.size(); ++index) {
    const json& entry = entries[index];
    if (!entry.is_object() || !entry.contains("word") || !entry["word"].is_string()) {
      throw SchemaError("word " + std::to_string(index) + ": missing 'word' string");
    }
    const std::string status = entry.value("case", std::string{});
    // Audio the aligner heard but could not place in the text has no
    // character position.
    if (status == "not-found-in-transcript") continue;

    AlignedWord word;
    word.token = entry["word"].get<std::string>();

    if (entry.contains("startOffset") && entry.contains("endOffset")) {
      const auto b = entry["startOffset"].get<long long>();
      const auto e = entry["endOffset"].get<long long>();
      if (b < 0 || e < b || static_cast<std::size_t>(e) > text.size()) {
        throw OffsetError(index, "word " + std::to_string(index) + " ('" +
                                     word.token + "'): offsets [" +
                                     std::to_string(b) + ", " + std::to_string(e) +
                                     ") outside text of length " +
                                     std::to_string(text.size()));
      }
      word.char_begin = static_cast<std::size_t>(b);
      word.char_end = static_cast<std::size_t>(e);
    } else {
      const auto pos = find_token(text, word.token, cursor);
      if (!pos) {
        throw OffsetError(index, "word " + std::to_string(index) + " ('" +
                                     word.token + "') not found in text after offset " +
                                     std::to_string(cursor));
      }
      word.char_begin = *pos;
      word.char_end = *pos + word.token.size();
    }
    if (last_begin && word.char_begin <= *last_begin) {
      throw OffsetError(index, "word " + std::to_string(index) +
                                   ": character offsets not strictly increasing");
    }
    last_begin = word.char_begin;
    cursor = word.char_end;

    if (status == "success") {
      word.status = WordStatus::kAligned;
      word.start_s = number_field(entry, "start", index);
      word.end_s = number_field(entry, "end", index);
      if (word.end_s < word.start_s) {
        throw SchemaError("word " + std::to_string(index) + ": end before start");
      }
      if (last_start && word.start_s < *last_start) {
        throw SchemaError("word " + std::to_string(index) + " ('" + word.token +
                          "') starts at " + std::to_string(word.start_s) +
                          " s, before the previous aligned word");
      }
      last_start = word.start_s;

      double phone_sum = 0.0;
      if (const auto it = entry.find("phones"); it != entry.end()) {
        for (const json& p : *it) {
          Phone phone;
          phone.label = p.at("phone").get<std::string>();
          phone.duration_s = p.at("duration").get<double>();
          phone_sum += phone.duration_s;
          word.phones.push_back(std::move(phone));
        }
      }
      word.duration_mismatch =
          std::abs(phone_sum - (word.end_s - word.start_s)) > kPhoneSumTolerance;
    }
    chapter.words.push_back(std::move(word));
  }
  return chapter;
}

}  // namespace

AlignedChapter parse_alignment(std::string_view json_bytes,
                               std::string chapter_text) {
  try {
    return parse_alignment_impl(json_bytes, std::move(chapter_text));
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed alignment entry: ") + e.what());
  }
}

std::pair<double, double> segment_time_span(const AlignedChapter& chapter,
                                            WordSpan span) {
  const std::size_t end = std::min(span.end, chapter.words.size());
  std::optional<double> start;
  double stop = 0.0;
  for (std::size_t i = span.begin; i < end; ++i) {
    const AlignedWord& w = chapter.words[i];
    if (!w.aligned()) continue;
    if (!start) start = w.start_s;
    stop = w.end_s;
  }
  if (!start) {
    throw NoTimingInfo("words [" + std::to_string(span.begin) + ", " +
                       std::to_string(span.end) + ") contain no aligned word");
  }
  return {*start, stop};
}

nlohmann::json to_json(const AlignedChapter& chapter) {
  json words = json::array();
  for (const AlignedWord& w : chapter.words) {
    json jw = {{"token", w.token},
               {"aligned", w.aligned()},
               {"char_begin", w.char_begin},
               {"char_end", w.char_end}};
    if (w.aligned()) {
      jw["start_s"] = w.start_s;
      jw["end_s"] = w.end_s;
      jw["duration_mismatch"] = w.duration_mismatch;
      json phones = json::array();
      for (const Phone& p : w.phones) {
        phones.push_back({{"label", p.label}, {"duration_s", p.duration_s}});
      }
      jw["phones"] = std::move(phones);
    }
    words.push_back(std::move(jw));
  }
  return {{"book_id", chapter.book_id},
          {"chapter_id", chapter.chapter_id},
          {"audio_path", chapter.audio_path},
          {"text", chapter.text},
          {"words", std::move(words)}};
}

AlignedChapter chapter_from_json(const nlohmann::json& j) {
  try {
    AlignedChapter chapter;
    chapter.book_id = j.at("book_id").get<std::string>();
    chapter.chapter_id = j.at("chapter_id").get<std::string>();
    chapter.audio_path = j.at("audio_path").get<std::string>();
    chapter.text = j.at("text").get<std::string>();
    for (const json& jw : j.at("words")) {
      AlignedWord w;
      w.token = jw.at("token").get<std::string>();
      w.char_begin = jw.at("char_begin").get<std::size_t>();
      w.char_end = jw.at("char_end").get<std::size_t>();
      if (jw.at("aligned").get<bool>()) {
        w.status = WordStatus::kAligned;
        w.start_s = jw.at("start_s").get<double>();
        w.end_s = jw.at("end_s").get<double>();
        w.duration_mismatch = jw.at("duration_mismatch").get<bool>();
        for (const json& p : jw.at("phones")) {
          w.phones.push_back({p.at("label").get<std::string>(),
                              p.at("duration_s").get<double>()});
        }
      }
      chapter.words.push_back(std::move(w));
    }
    return chapter;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed chapter JSON: ") + e.what());
  }
}

}  // namespace bookprosody::align
