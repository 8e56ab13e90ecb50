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

#ifndef BOOKPROSODY_PROSODY_CHAPTER_PROSODY_HPP_
#define BOOKPROSODY_PROSODY_CHAPTER_PROSODY_HPP_

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bookprosody/align/alignment.hpp"
#include "bookprosody/dsp/frame_track.hpp"
#include "bookprosody/prosody/zscore.hpp"
#include "bookprosody/segment/segmenter.hpp"

namespace bookprosody::prosody {

enum Attribute : std::size_t { kPitch = 0, kVolume = 1, kRate = 2 };
inline constexpr std::array<const char*, 3> kAttributeNames{"pitch", "volume", "rate"};

/// Pre-normalization measurements of one segment.
struct RawProsody {
  std::optional<double> pitch_hz;
  std::size_t pitch_frames = 0;
  std::optional<double> volume_db;
  std::size_t volume_frames = 0;
  std::optional<double> rate;
  std::size_t words = 0;  // aligned-or-not words in the span
};

struct AttributeStats {
  MeanStd raw;  // statistics of the raw per-segment values
  bool degenerate = false;
};

struct ChapterProsody {
  std::string book_id;
  std::string chapter_id;
  std::vector<segment::Segment> segments;  // prosody filled
  std::vector<RawProsody> raw;
  std::array<AttributeStats, 3> stats;
  /// (segment_id, reason) for every imputed attribute.
  std::vector<std::pair<long, std::string>> flags;
  std::vector<std::string> warnings;

  /// Reasons recorded for one segment, joined with '|'.
  std::string flags_for(long segment_id) const;
};

/// Fills per-segment pitch, volume and rate, then z-scores each attribute
/// across the chapter. Missing values are imputed as z = 0 and flagged.
ChapterProsody compute_chapter_prosody(const align::AlignedChapter& chapter,
                                       std::vector<segment::Segment> segments,
                                       const dsp::FrameTrack& pitch,
                                       const dsp::FrameTrack& intensity);

/// One line of the training-data interchange CSV.
struct ProsodyRow {
  long segment_id = 0;
  long sentence_id = 0;
  bool is_quote = false;
  segment::ProsodyTriple z{};
  std::string flags;

  bool imputed() const noexcept { return !flags.empty(); }
  /// The attribute's value was missing and z was imputed.
  bool imputed(Attribute a) const;
};

/// `segment_id,sentence_id,is_quote,pitch_z,volume_z,rate_z,flags`
void write_prosody_csv(std::ostream& out, const ChapterProsody& chapter);
std::vector<ProsodyRow> read_prosody_csv(std::istream& in);

/// Full record (segments with text, raw values, statistics).
nlohmann::json to_json(const ChapterProsody& chapter);
ChapterProsody chapter_prosody_from_json(const nlohmann::json& j);

}  // namespace bookprosody::prosody

#endif  // BOOKPROSODY_PROSODY_CHAPTER_PROSODY_HPP_
