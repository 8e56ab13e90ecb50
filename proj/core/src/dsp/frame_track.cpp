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

#include "bookprosody/dsp/frame_track.hpp"

#include <ostream>

namespace bookprosody::dsp {

std::optional<double> FrameTrack::value_at(std::size_t i) const {
  if (kind == TrackKind::kPitch && voiced[i] == 0) return std::nullopt;
  return values[i];
}

void write_track_csv(std::ostream& out, const FrameTrack& track) {
  out << "frame_index,time_s,value,voiced\n";
  const auto old_precision = out.precision(10);
  for (std::size_t i = 0; i < track.size(); ++i) {
    out << i << ',' << track.time_at(i) << ',';
    const auto v = track.value_at(i);
    if (v) out << *v;
    out << ',' << (v ? 1 : 0) << '\n';
  }
  out.precision(old_precision);
}

}  // namespace bookprosody::dsp
