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

#include "bookprosody/eval/readers.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "bookprosody/error.hpp"
#include "bookprosody/eval/binomial.hpp"

namespace bookprosody::eval {

namespace {

struct Sums {
  std::size_t words = 0;
  double pitch = 0.0;
  std::size_t pitch_frames = 0;
  double volume = 0.0;
  std::size_t volume_frames = 0;

  void add(const DialogueSegment& s) {
    words += s.words;
    if (s.pitch_hz && s.pitch_frames > 0) {
      pitch += *s.pitch_hz * static_cast<double>(s.pitch_frames);
      pitch_frames += s.pitch_frames;
    }
    if (s.volume_db && s.volume_frames > 0) {
      volume += *s.volume_db * static_cast<double>(s.volume_frames);
      volume_frames += s.volume_frames;
    }
  }
  std::optional<double> mean_pitch() const {
    if (pitch_frames == 0) return std::nullopt;
    return pitch / static_cast<double>(pitch_frames);
  }
  std::optional<double> mean_volume() const {
    if (volume_frames == 0) return std::nullopt;
    return volume / static_cast<double>(volume_frames);
  }
};

Gender gender_of(const BookDialogue& book, const std::string& id) {
  const auto it = book.genders.find(id);
  return it == book.genders.end() ? Gender::kUnknown : it->second;
}

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json to_json(const GroupStats& g) {
  return {{"words", g.words},
          {"mean_pitch_hz", optional_json(g.mean_pitch_hz)},
          {"mean_volume_db", optional_json(g.mean_volume_db)}};
}

nlohmann::json to_json(const BinomialSummary& b) {
  return {{"k", b.k}, {"n", b.n}, {"p", b.p_value}};
}

}  // namespace

std::vector<CharacterStats> character_stats(const BookDialogue& book) {
  std::map<std::string, Sums> sums;
  for (const auto& s : book.segments) sums[s.character_id].add(s);
  std::vector<CharacterStats> out;
  for (const auto& [id, sum] : sums) {
    CharacterStats c;
    c.character_id = id;
    c.gender = gender_of(book, id);
    c.word_count = sum.words;
    if (sum.words > 0) {
      c.mean_pitch_hz = sum.mean_pitch();
      c.mean_volume_db = sum.mean_volume();
    }
    out.push_back(std::move(c));
  }
  std::stable_sort(out.begin(), out.end(), [](const CharacterStats& a, const CharacterStats& b) {
    if (a.word_count != b.word_count) return a.word_count > b.word_count;
    return a.character_id < b.character_id;
  });
  return out;
}

std::pair<CharacterStats, CharacterStats> character_pair_stats(const BookDialogue& book) {
  auto stats = character_stats(book);
  std::erase_if(stats, [](const CharacterStats& c) { return c.word_count == 0; });
  if (stats.size() < 2) {
    throw InsufficientCharacters("book " + book.book_id + " has " + std::to_string(stats.size()) +
                                 " speaking character(s), need 2");
  }
  return {stats[0], stats[1]};
}

GenderReport gender_dialogue_test(std::span<const BookDialogue> books, std::size_t min_words) {
  GenderReport report;
  for (const auto& book : books) {
    Sums female;
    Sums male;
    for (const auto& s : book.segments) {
      switch (gender_of(book, s.character_id)) {
        case Gender::kFemale:
          female.add(s);
          break;
        case Gender::kMale:
          male.add(s);
          break;
        case Gender::kUnknown:
          break;
      }
    }
    BookGenderComparison cmp;
    cmp.book_id = book.book_id;
    cmp.female = {female.words, female.mean_pitch(), female.mean_volume()};
    cmp.male = {male.words, male.mean_pitch(), male.mean_volume()};
    cmp.eligible = female.words >= min_words && male.words >= min_words &&
                   cmp.female.mean_pitch_hz && cmp.male.mean_pitch_hz &&
                   cmp.female.mean_volume_db && cmp.male.mean_volume_db;
    if (cmp.eligible) {
      cmp.female_higher_pitch = *cmp.female.mean_pitch_hz > *cmp.male.mean_pitch_hz;
      cmp.male_louder = *cmp.male.mean_volume_db > *cmp.female.mean_volume_db;
    }
    report.per_book.push_back(std::move(cmp));
  }
  std::sort(report.per_book.begin(), report.per_book.end(),
            [](const auto& a, const auto& b) { return a.book_id < b.book_id; });

  long n = 0;
  for (const auto& b : report.per_book) {
    if (!b.eligible) continue;
    ++n;
    report.pitch.k += b.female_higher_pitch ? 1 : 0;
    report.volume.k += b.male_louder ? 1 : 0;
  }
  if (n == 0) {
    throw NoData("no book has at least " + std::to_string(min_words) +
                 " dialogue words for both genders");
  }
  report.pitch.n = n;
  report.volume.n = n;
  report.pitch.p_value = binomial_upper_tail(report.pitch.k, n);
  report.volume.p_value = binomial_upper_tail(report.volume.k, n);
  return report;
}

nlohmann::json to_json(const CharacterStats& s) {
  return {{"character_id", s.character_id},
          {"gender", features::gender_name(s.gender)},
          {"word_count", s.word_count},
          {"mean_pitch_hz", optional_json(s.mean_pitch_hz)},
          {"mean_volume_db", optional_json(s.mean_volume_db)}};
}

nlohmann::json to_json(const GenderReport& report) {
  nlohmann::json per_book = nlohmann::json::array();
  for (const auto& b : report.per_book) {
    per_book.push_back({{"book_id", b.book_id},
                        {"female", to_json(b.female)},
                        {"male", to_json(b.male)},
                        {"eligible", b.eligible},
                        {"female_higher_pitch", b.female_higher_pitch},
                        {"male_louder", b.male_louder}});
  }
  return {{"per_book", std::move(per_book)},
          {"n", report.pitch.n},
          {"k_pitch", report.pitch.k},
          {"k_volume", report.volume.k},
          {"p_pitch", report.pitch.p_value},
          {"p_volume", report.volume.p_value},
          {"pitch", to_json(report.pitch)},
          {"volume", to_json(report.volume)}};
}

}  // namespace bookprosody::eval
