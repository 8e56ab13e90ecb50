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

#ifndef BOOKPROSODY_EVAL_READERS_HPP_
#define BOOKPROSODY_EVAL_READERS_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bookprosody/features/character.hpp"

namespace bookprosody::eval {

using features::Gender;

/// Raw (pre-normalisation) measurements of one attributed dialogue segment.
struct DialogueSegment {
  std::string character_id;
  std::size_t words = 0;
  std::optional<double> pitch_hz;
  std::size_t pitch_frames = 0;
  std::optional<double> volume_db;
  std::size_t volume_frames = 0;
};

struct BookDialogue {
  std::string book_id;
  std::vector<DialogueSegment> segments;
  /// Characters without an entry count as unknown gender.
  std::map<std::string, Gender> genders;
};

struct CharacterStats {
  std::string character_id;
  Gender gender = Gender::kUnknown;
  std::size_t word_count = 0;
  /// Frame-weighted means over the character's dialogue segments.
  std::optional<double> mean_pitch_hz;
  std::optional<double> mean_volume_db;
};

/// All characters with dialogue, by attributed word count (descending,
/// ties broken by the smaller character_id).
std::vector<CharacterStats> character_stats(const BookDialogue& book);

/// The two most frequent speakers. Throws InsufficientCharacters when fewer
/// than two characters speak.
std::pair<CharacterStats, CharacterStats> character_pair_stats(const BookDialogue& book);

struct GroupStats {
  std::size_t words = 0;
  std::optional<double> mean_pitch_hz;
  std::optional<double> mean_volume_db;
};

struct BookGenderComparison {
  std::string book_id;
  GroupStats female;
  GroupStats male;
  /// Both groups reach the word threshold and have pitch and volume means.
  bool eligible = false;
  bool female_higher_pitch = false;
  bool male_louder = false;
};

struct BinomialSummary {
  long k = 0;
  long n = 0;
  double p_value = 1.0;
};

struct GenderReport {
  std::vector<BookGenderComparison> per_book;  // sorted by book_id
  /// Books where the female group has the higher mean pitch.
  BinomialSummary pitch;
  /// Books where the male group has the higher mean volume.
  BinomialSummary volume;
};

inline constexpr std::size_t kMinGroupWords = 100;

/// Per-book gender comparison and one-sided exact binomial tests over the
/// eligible books. Throws NoData when no book is eligible.
GenderReport gender_dialogue_test(std::span<const BookDialogue> books,
                                  std::size_t min_words = kMinGroupWords);

nlohmann::json to_json(const CharacterStats& stats);
nlohmann::json to_json(const GenderReport& report);

}  // namespace bookprosody::eval

#endif  // BOOKPROSODY_EVAL_READERS_HPP_
