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

#ifndef BOOKPROSODY_DSP_INTENSITY_HPP_
#define BOOKPROSODY_DSP_INTENSITY_HPP_

#include "bookprosody/dsp/audio.hpp"
#include "bookprosody/dsp/frame_track.hpp"

namespace bookprosody::dsp {

/// Reference pressure for dB SPL; normalized amplitude is read as Pascals.
inline constexpr double kReferencePressure = 2e-5;
inline constexpr double kIntensityWindowSeconds = 0.030;

/// Intensity in dB per 10 ms frame: 10*log10(ms / p_ref^2) where ms is the
/// Hann-weighted mean square of a 30 ms window. A full-scale sine reads
/// 90.97 dB. Values below -100 dB clamp to -100.
///
/// Frame i is centered at 0.015 + i*0.01 s. Audio shorter than one window
/// yields an empty track.
FrameTrack intensity_track(const AudioBuffer& audio);

}  // namespace bookprosody::dsp

#endif  // BOOKPROSODY_DSP_INTENSITY_HPP_
