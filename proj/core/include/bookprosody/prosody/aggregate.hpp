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

#ifndef BOOKPROSODY_PROSODY_AGGREGATE_HPP_
#define BOOKPROSODY_PROSODY_AGGREGATE_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bookprosody/align/alignment.hpp"
#include "bookprosody/dsp/frame_track.hpp"
#include "bookprosody/segment/segmenter.hpp"

namespace bookprosody::prosody {

/// Mean of frame values over a time span, with the number of frames used.
struct SpanMean {
  double value = 0.0;
  std::size_t frames = 0;
};

/// Mean F0 over voiced frames centered in [start_s, end_s).
std::optional<SpanMean> segment_pitch(const dsp::FrameTrack& track, double start_s,
                                      double end_s);

/// Mean dB over frames centered in [start_s, end_s), skipping frames
/// clamped to the floor.
std::optional<SpanMean> segment_volume(const dsp::FrameTrack& track, double start_s,
                                       double end_s);

/// Phone label without the aligner's word-position suffix
/// (`ah_B` -> `ah`; labels without a suffix are returned unchanged).
std::string phone_base_label(std::string_view label);

/// Per-occurrence duration z-scores, indexed like the chapter's words and
/// their phones. Words that are not aligned or are flagged with a duration
/// mismatch have an empty list and take no part in the statistics.
struct PhoneZScores {
  std::vector<std::vector<double>> by_word;
};

/// Within the chapter, each phone occurrence is z-scored against all
/// occurrences of the same base label (population std). Labels seen once or
/// with zero spread give z = 0.
PhoneZScores phoneme_duration_zscores(const align::AlignedChapter& chapter);

/// Raw rate per segment: the negated mean phone z over the segment's words,
/// so that faster speech is positive. Segments without phones give no value.
std::vector<std::optional<double>> segment_rate(const align::AlignedChapter& chapter,
                                                std::span<const segment::Segment> segments,
                                                const PhoneZScores& phone_z);

}  // namespace bookprosody::prosody

#endif  // BOOKPROSODY_PROSODY_AGGREGATE_HPP_
