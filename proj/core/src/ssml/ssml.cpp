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

#include "bookprosody/ssml/ssml.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "bookprosody/error.hpp"

namespace bookprosody::ssml {

namespace {

double clamp(double v, double lo, double hi, bool& flag) {
  if (v < lo) {
    flag = true;
    return lo;
  }
  if (v > hi) {
    flag = true;
    return hi;
  }
  return v;
}

// Fixed-point with an explicit sign; "-0.00" becomes "+0.00".
std::string signed_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%+.*f", decimals, v);
  std::string s(buf);
  if (s[0] == '-' && s.find_first_not_of("0.", 1) == std::string::npos) s[0] = '+';
  return s;
}

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

SsmlPhrase z_to_attributes(const std::array<double, 3>& z, const ReferenceStats& ref,
                           std::string text) {
  if (!(ref.pitch_mean_hz > 0.0) || !(ref.pitch_std_hz > 0.0)) {
    throw RefError("pitch reference mean and std must be positive");
  }
  if (ref.volume_mean_db.has_value() != ref.volume_std_db.has_value()) {
    throw RefError("volume reference needs both mean and std");
  }
  if (ref.volume_std_db && (!(*ref.volume_std_db > 0.0) || !(*ref.volume_mean_db > 0.0))) {
    throw RefError("volume reference mean and std must be positive");
  }
  SsmlPhrase p;
  p.text = std::move(text);
  p.z = z;
  p.pitch_pct = clamp(100.0 * z[0] * ref.pitch_std_hz / ref.pitch_mean_hz, -kPitchLimitPct,
                      kPitchLimitPct, p.clamped.pitch);
  p.volume_db = ref.volume_std_db
                    ? clamp(z[1] * *ref.volume_std_db, -kVolumeLimitDb, kVolumeLimitDb,
                            p.clamped.volume)
                    : 0.0;
  p.rate_pct =
      clamp(kRateMeanPct + kRateStdPct * z[2], kRateMinPct, kRateMaxPct, p.clamped.rate);
  return p;
}

std::string format_pitch(double pct) { return signed_fixed(pct, 2) + "%"; }

std::string format_volume(double db) { return signed_fixed(db, 1) + "dB"; }

std::string format_rate(double pct) { return std::to_string(std::llround(pct)) + "%"; }

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      case '\'':
        out += "&apos;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string emit_ssml(std::span<const SsmlPhrase> phrases) {
  std::string out = "<speak>";
  for (std::size_t i = 0; i < phrases.size(); ++i) {
    const auto& p = phrases[i];
    if (i > 0) out += ' ';
    out += "<prosody pitch=\"" + format_pitch(p.pitch_pct) + "\" volume=\"" +
           format_volume(p.volume_db) + "\" rate=\"" + format_rate(p.rate_pct) + "\">";
    out += xml_escape(p.text);
    out += "</prosody>";
  }
  out += "</speak>";
  return out;
}

std::string emit_plain_ssml(std::span<const std::string> texts) {
  std::string out = "<speak>";
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (i > 0) out += ' ';
    out += xml_escape(texts[i]);
  }
  out += "</speak>";
  return out;
}

nlohmann::json to_json(const SsmlPhrase& p) {
  return {{"text", p.text},
          {"z", p.z},
          {"pitch", format_pitch(p.pitch_pct)},
          {"volume", format_volume(p.volume_db)},
          {"rate", format_rate(p.rate_pct)},
          {"pitch_pct", p.pitch_pct},
          {"volume_db", p.volume_db},
          {"rate_pct", p.rate_pct},
          {"clamped", {{"pitch", p.clamped.pitch},
                       {"volume", p.clamped.volume},
                       {"rate", p.clamped.rate}}}};
}

nlohmann::json to_json(const ReferenceStats& ref) {
  return {{"pitch_mean_hz", ref.pitch_mean_hz},
          {"pitch_std_hz", ref.pitch_std_hz},
          {"volume_mean_db", optional_json(ref.volume_mean_db)},
          {"volume_std_db", optional_json(ref.volume_std_db)}};
}

}  // namespace bookprosody::ssml
