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

#ifndef BOOKPROSODY_SSML_SSML_HPP_
#define BOOKPROSODY_SSML_SSML_HPP_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json_fwd.hpp>

namespace bookprosody::ssml {

inline constexpr double kPitchLimitPct = 50.0;
inline constexpr double kVolumeLimitDb = 12.0;
inline constexpr double kRateMinPct = 50.0;
inline constexpr double kRateMaxPct = 200.0;
/// Rate is mapped with a fixed centre and spread rather than measured ones.
inline constexpr double kRateMeanPct = 100.0;
inline constexpr double kRateStdPct = 50.0;

/// Pitch and volume statistics of the human reading used to turn z-scores
/// back into relative changes.
struct ReferenceStats {
  double pitch_mean_hz = 200.0;
  double pitch_std_hz = 30.0;
  /// Without a volume reference the volume change is always 0 dB.
  std::optional<double> volume_mean_db;
  std::optional<double> volume_std_db;
};

struct ClampFlags {
  bool pitch = false;
  bool volume = false;
  bool rate = false;

  bool any() const noexcept { return pitch || volume || rate; }
};

struct SsmlPhrase {
  std::string text;
  double pitch_pct = 0.0;
  double volume_db = 0.0;
  double rate_pct = kRateMeanPct;
  ClampFlags clamped;
  /// The z-scores the attributes came from.
  std::array<double, 3> z{};
};

/// pitch% = 100 z std / mean, volume dB = z std, rate% = 100 + 50 z, each
/// clamped to [-50, 50], [-12, 12] and [50, 200]. Throws RefError for a
/// non-positive pitch mean or std, or a non-positive volume mean or std
/// when a volume reference is given.
SsmlPhrase z_to_attributes(const std::array<double, 3>& z, const ReferenceStats& ref,
                           std::string text = {});

/// `+P.PP%`, `+V.VdB`, `R%`. A value that rounds to zero is written with `+`.
std::string format_pitch(double pct);
std::string format_volume(double db);
std::string format_rate(double pct);

/// Escapes & < > " and '.
std::string xml_escape(std::string_view text);

/// `<speak>` with one `<prosody>` element per phrase, separated by spaces.
std::string emit_ssml(std::span<const SsmlPhrase> phrases);

/// The same texts without prosody markup.
std::string emit_plain_ssml(std::span<const std::string> texts);

nlohmann::json to_json(const SsmlPhrase& phrase);
nlohmann::json to_json(const ReferenceStats& ref);

}  // namespace bookprosody::ssml

#endif  // BOOKPROSODY_SSML_SSML_HPP_
