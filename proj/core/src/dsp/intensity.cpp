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

#include "bookprosody/dsp/intensity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace bookprosody::dsp {

FrameTrack intensity_track(const AudioBuffer& audio) {
  const double sr = audio.sample_rate();
  const auto window =
      static_cast<std::size_t>(std::lround(kIntensityWindowSeconds * sr));

  FrameTrack track;
  track.kind = TrackKind::kIntensity;
  track.start_s = static_cast<double>(window) / (2.0 * sr);
  if (window == 0) return track;

  std::vector<double> hann(window);
  double weight_sum = 0.0;
  for (std::size_t j = 0; j < window; ++j) {
    const double phase = 2.0 * std::numbers::pi * (static_cast<double>(j) + 0.5) /
                         static_cast<double>(window);
    hann[j] = 0.5 - 0.5 * std::cos(phase);
    weight_sum += hann[j];
  }

  const double ref_sq = kReferencePressure * kReferencePressure;
  const auto samples = audio.samples();
  for (std::size_t i = 0;; ++i) {
    const auto start =
        static_cast<std::size_t>(std::llround(static_cast<double>(i) * kHopSeconds * sr));
    if (start + window > samples.size()) break;
    const double* x = samples.data() + start;
    double acc = 0.0;
    for (std::size_t j = 0; j < window; ++j) acc += hann[j] * x[j] * x[j];
    const double mean_square = acc / weight_sum;
    double db = kIntensityFloorDb;
    if (mean_square > 0.0) {
      db = std::max(kIntensityFloorDb, 10.0 * std::log10(mean_square / ref_sq));
    }
    track.values.push_back(db);
  }
  return track;
}

}  // namespace bookprosody::dsp
