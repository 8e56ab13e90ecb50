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

#ifndef BOOKPROSODY_DSP_PITCH_HPP_
#define BOOKPROSODY_DSP_PITCH_HPP_

#include "bookprosody/dsp/audio.hpp"
#include "bookprosody/dsp/frame_track.hpp"

namespace bookprosody::dsp {

struct PitchParams {
  double floor_hz = 75.0;
  double ceil_hz = 600.0;
  /// Absolute threshold on the cumulative-mean-normalized difference.
  double threshold = 0.15;
  /// Frames quieter than this (dB re full scale RMS) are never voiced.
  double silence_dbfs = -60.0;
  double window_s = 0.040;
};

/// YIN pitch tracker at a 10 ms hop.
///
/// Each 40 ms frame computes the squared-difference function over its first
/// half, normalizes it by its cumulative mean, and takes the first lag in
/// [sr/ceil, sr/floor] whose normalized value dips below `threshold`,
/// following the dip down to its local minimum. The minimum is refined by
/// parabolic interpolation. F0 estimates outside [floor_hz, ceil_hz] after
/// refinement are reported unvoiced.
///
/// Frame i is centered at window_s/2 + i*0.01 s. Throws InputTooShort when
/// the audio cannot hold a single window.
FrameTrack pitch_track(const AudioBuffer& audio, const PitchParams& params = {});

}  // namespace bookprosody::dsp

#endif  // BOOKPROSODY_DSP_PITCH_HPP_
