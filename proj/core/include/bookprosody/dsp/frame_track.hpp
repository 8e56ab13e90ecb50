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

#ifndef BOOKPROSODY_DSP_FRAME_TRACK_HPP_
#define BOOKPROSODY_DSP_FRAME_TRACK_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace bookprosody::dsp {

/// Analysis hop shared by every track.
inline constexpr double kHopSeconds = 0.01;

/// Intensity values are clamped from below to this level.
inline constexpr double kIntensityFloorDb = -100.0;

enum class TrackKind { kPitch, kIntensity };

/// Fixed-hop time series. Frame i is centered at start_s + i * hop_s.
///
/// Pitch tracks carry one voicing flag per frame; unvoiced frames store 0 in
/// `values` and have no F0. Intensity tracks leave `voiced` empty.
struct FrameTrack {
  TrackKind kind = TrackKind::kPitch;
  double hop_s = kHopSeconds;
  double start_s = 0.0;
  std::vector<double> values;
  std::vector<std::uint8_t> voiced;

  std::size_t size() const noexcept { return values.size(); }
  double time_at(std::size_t i) const noexcept {
    return start_s + static_cast<double>(i) * hop_s;
  }
  bool is_voiced(std::size_t i) const noexcept {
    return kind == TrackKind::kPitch && voiced[i] != 0;
  }
  /// F0 for voiced pitch frames, the dB value for intensity frames.
  std::optional<double> value_at(std::size_t i) const;
};

/// Writes `frame_index,time_s,value,voiced`. Unvoiced pitch frames leave the
/// value column empty; intensity frames always report voiced=1.
void write_track_csv(std::ostream& out, const FrameTrack& track);

}  // namespace bookprosody::dsp

#endif  // BOOKPROSODY_DSP_FRAME_TRACK_HPP_
