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

#include "bookprosody/prosody/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "bookprosody/prosody/zscore.hpp"

namespace bookprosody::prosody {

namespace {

// First frame index whose center may be >= start_s.
std::size_t first_frame(const dsp::FrameTrack& track, double start_s) {
  const double pos = std::floor((start_s - track.start_s) / track.hop_s) - 1.0;
  return pos <= 0.0 ? 0 : static_cast<std::size_t>(pos);
}

template <typename Accept>
std::optional<SpanMean> span_mean(const dsp::FrameTrack& track, double start_s,
                                  double end_s, Accept accept) {
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = first_frame(track, start_s); i < track.size(); ++i) {
    const double t = track.time_at(i);
    if (t >= end_s) break;
    if (t < start_s || !accept(i)) continue;
    sum += track.values[i];
    ++n;
  }
  if (n == 0) return std::nullopt;
  return SpanMean{sum / static_cast<double>(n), n};
}

}  // namespace

std::optional<SpanMean> segment_pitch(const dsp::FrameTrack& track, double start_s,
                                      double end_s) {
  return span_mean(track, start_s, end_s,
                   [&](std::size_t i) { return track.is_voiced(i); });
}

std::optional<SpanMean> segment_volume(const dsp::FrameTrack& track, double start_s,
                                       double end_s) {
  return span_mean(track, start_s, end_s, [&](std::size_t i) {
    return track.values[i] > dsp::kIntensityFloorDb;
  });
}

std::string phone_base_label(std::string_view label) {
  if (label.size() > 2 && label[label.size() - 2] == '_') {
    const char pos = label.back();
    if (pos == 'B' || pos == 'I' || pos == 'E' || pos == 'S') {
      return std::string(label.substr(0, label.size() - 2));
    }
  }
  return std::string(label);
}

PhoneZScores phoneme_duration_zscores(const align::AlignedChapter& chapter) {
  std::map<std::string, std::vector<double>> durations;
  auto usable = [](const align::AlignedWord& w) {
    return w.aligned() && !w.duration_mismatch;
  };
  for (const auto& w : chapter.words) {
    if (!usable(w)) continue;
    for (const auto& p : w.phones) {
      durations[phone_base_label(p.label)].push_back(p.duration_s);
    }
  }
  std::map<std::string, MeanStd> stats;
  for (const auto& [label, values] : durations) {
    stats[label] = population_stats(values);
  }

  PhoneZScores out;
  out.by_word.resize(chapter.words.size());
  for (std::size_t i = 0; i < chapter.words.size(); ++i) {
    const auto& w = chapter.words[i];
    if (!usable(w)) continue;
    auto& zs = out.by_word[i];
    for (const auto& p : w.phones) {
      const std::string label = phone_base_label(p.label);
      const MeanStd& s = stats[label];
      const bool degenerate = durations[label].size() < 2 || !(s.std > 0.0);
      zs.push_back(degenerate ? 0.0 : (p.duration_s - s.mean) / s.std);
    }
  }
  return out;
}

std::vector<std::optional<double>> segment_rate(const align::AlignedChapter& chapter,
                                                std::span<const segment::Segment> segments,
                                                const PhoneZScores& phone_z) {
  std::vector<std::optional<double>> out;
  out.reserve(segments.size());
  for (const auto& seg : segments) {
    double sum = 0.0;
    std::size_t n = 0;
    const std::size_t end = std::min(seg.word_span.end, chapter.words.size());
    for (std::size_t w = seg.word_span.begin; w < end; ++w) {
      for (double z : phone_z.by_word[w]) {
        sum += z;
        ++n;
      }
    }
    if (n == 0) {
      out.emplace_back();
    } else {
      out.emplace_back(-(sum / static_cast<double>(n)));
    }
  }
  return out;
}

}  // namespace bookprosody::prosody
