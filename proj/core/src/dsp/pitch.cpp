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

#include "bookprosody/dsp/pitch.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bookprosody/error.hpp"

namespace bookprosody::dsp {

namespace {

struct YinFrame {
  const double* x;
  std::size_t half;     // integration length
  std::size_t tau_min;
  std::size_t tau_max;  // inclusive; d is computed up to tau_max + 1
};

// Squared-difference function d(tau) for tau in [0, tau_max + 1].
void difference(const YinFrame& f, std::vector<double>& d) {
  d.assign(f.tau_max + 2, 0.0);
  for (std::size_t tau = 1; tau < d.size(); ++tau) {
    const double* a = f.x;
    const double* b = f.x + tau;
    double sum = 0.0;
    for (std::size_t j = 0; j < f.half; ++j) {
      const double diff = a[j] - b[j];
      sum += diff * diff;
    }
    d[tau] = sum;
  }
}

void cumulative_mean_normalize(const std::vector<double>& d,
                               std::vector<double>& dn) {
  dn.assign(d.size(), 1.0);
  double running = 0.0;
  for (std::size_t tau = 1; tau < d.size(); ++tau) {
    running += d[tau];
    dn[tau] = running > 0.0 ? d[tau] * static_cast<double>(tau) / running : 1.0;
  }
}

std::optional<double> estimate_period(const YinFrame& f, double threshold,
                                      std::vector<double>& d,
                                      std::vector<double>& dn) {
  difference(f, d);
  cumulative_mean_normalize(d, dn);

  std::size_t tau = f.tau_min;
  for (; tau <= f.tau_max; ++tau) {
    if (dn[tau] < threshold) {
      while (tau + 1 <= f.tau_max && dn[tau + 1] < dn[tau]) ++tau;
      break;
    }
  }
  if (tau > f.tau_max) return std::nullopt;

  // Parabolic refinement on the raw difference function, which is locally
  // quadratic around the true period for periodic input.
  const double left = d[tau - 1];
  const double mid = d[tau];
  const double right = d[tau + 1];
  const double curvature = left - 2.0 * mid + right;
  double shift = 0.0;
  if (curvature > 0.0) {
    shift = 0.5 * (left - right) / curvature;
    if (std::abs(shift) > 1.0) shift = 0.0;
  }
  return static_cast<double>(tau) + shift;
}

}  // namespace

FrameTrack pitch_track(const AudioBuffer& audio, const PitchParams& params) {
  if (!(params.floor_hz > 0.0) || !(params.ceil_hz > params.floor_hz)) {
    throw std::invalid_argument("pitch floor/ceiling must satisfy 0 < floor < ceil");
  }
  const double sr = audio.sample_rate();
  const auto window = static_cast<std::size_t>(std::lround(params.window_s * sr));
  if (audio.size() < window || window < 4) {
    throw InputTooShort("audio of " + std::to_string(audio.size()) +
                        " samples is shorter than one " +
                        std::to_string(window) + "-sample analysis window");
  }

  YinFrame frame{};
  frame.half = window / 2;
  frame.tau_min = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::floor(sr / params.ceil_hz)));
  frame.tau_max = static_cast<std::size_t>(std::ceil(sr / params.floor_hz));
  if (frame.tau_max + 1 > window - frame.half) {
    throw std::invalid_argument("pitch window too short for the requested floor");
  }

  FrameTrack track;
  track.kind = TrackKind::kPitch;
  track.start_s = static_cast<double>(window) / (2.0 * sr);

  const double rms_gate = std::pow(10.0, params.silence_dbfs / 20.0);
  const auto samples = audio.samples();
  std::vector<double> d;
  std::vector<double> dn;

  for (std::size_t i = 0;; ++i) {
    const auto start =
        static_cast<std::size_t>(std::llround(static_cast<double>(i) * kHopSeconds * sr));
    if (start + window > samples.size()) break;
    frame.x = samples.data() + start;

    double energy = 0.0;
    for (std::size_t j = 0; j < window; ++j) energy += frame.x[j] * frame.x[j];
    const double rms = std::sqrt(energy / static_cast<double>(window));

    double f0 = 0.0;
    bool voiced = false;
    if (rms >= rms_gate) {
      if (auto period = estimate_period(frame, params.threshold, d, dn)) {
        f0 = sr / *period;
        voiced = f0 >= params.floor_hz && f0 <= params.ceil_hz;
      }
    }
    track.values.push_back(voiced ? f0 : 0.0);
    track.voiced.push_back(voiced ? 1 : 0);
  }
  return track;
}

}  // namespace bookprosody::dsp
