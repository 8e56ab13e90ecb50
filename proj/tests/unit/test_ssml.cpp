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


#include <doctest.h>

#include <array>
#include <cstdlib>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <nlohmann/json.hpp>

#include "bookprosody/error.hpp"
#include "bookprosody/ssml/ssml.hpp"

using namespace bookprosody;
using namespace bookprosody::ssml;
namespace pt = boost::property_tree;

namespace {

ReferenceStats with_volume(double mean, double std) {
  ReferenceStats ref;
  ref.volume_mean_db = mean;
  ref.volume_std_db = std;
  return ref;
}

pt::ptree parse_xml(const std::string& doc) {
  std::istringstream in(doc);
  pt::ptree tree;
  pt::read_xml(in, tree);
  return tree;
}

}  // namespace

TEST_CASE("z_to_attributes: examples") {
  const auto base = z_to_attributes({0, 0, 0}, with_volume(60, 4));
  CHECK(format_pitch(base.pitch_pct) == "+0.00%");
  CHECK(format_volume(base.volume_db) == "+0.0dB");
  CHECK(format_rate(base.rate_pct) == "100%");
  CHECK_FALSE(base.clamped.any());

  CHECK(format_pitch(z_to_attributes({1, 0, 0}, ReferenceStats{}).pitch_pct) == "+15.00%");

  const auto p = z_to_attributes({0, -2, 3}, with_volume(60, 4));
  CHECK(format_volume(p.volume_db) == "-8.0dB");
  CHECK(p.rate_pct == 200.0);
  CHECK(p.clamped.rate);
  CHECK_FALSE(p.clamped.volume);
}

TEST_CASE("z_to_attributes: clamps and reference errors") {
  const auto hi = z_to_attributes({10, 10, -10}, with_volume(60, 4));
  CHECK(hi.pitch_pct == kPitchLimitPct);
  CHECK(hi.volume_db == kVolumeLimitDb);
  CHECK(hi.rate_pct == kRateMinPct);
  CHECK(hi.clamped.pitch);
  CHECK(hi.clamped.volume);

  const auto no_volume = z_to_attributes({0, 3, 0}, ReferenceStats{});
  CHECK(no_volume.volume_db == 0.0);

  ReferenceStats bad;
  bad.pitch_std_hz = 0.0;
  CHECK_THROWS_AS(z_to_attributes({0, 0, 0}, bad), RefError);
  bad = ReferenceStats{};
  bad.pitch_mean_hz = -1.0;
  CHECK_THROWS_AS(z_to_attributes({0, 0, 0}, bad), RefError);
  CHECK_THROWS_AS(z_to_attributes({0, 0, 0}, with_volume(60, 0)), RefError);
  bad = ReferenceStats{};
  bad.volume_std_db = 3.0;
  CHECK_THROWS_AS(z_to_attributes({0, 0, 0}, bad), RefError);
}

TEST_CASE("formatting") {
  CHECK(format_pitch(-0.001) == "+0.00%");
  CHECK(format_pitch(-12.345) == "-12.35%");
  CHECK(format_pitch(7.0) == "+7.00%");
  CHECK(format_volume(-0.04) == "+0.0dB");
  CHECK(format_volume(2.25) == "+2.2dB");
  CHECK(format_rate(149.5) == "150%");
  CHECK(format_rate(50.0) == "50%");
}

TEST_CASE("emit_ssml: baseline document and escaping") {
  const std::vector<SsmlPhrase> one{z_to_attributes({0, 0, 0}, ReferenceStats{}, "Hi")};
  CHECK(emit_ssml(one) ==
        R"(<speak><prosody pitch="+0.00%" volume="+0.0dB" rate="100%">Hi</prosody></speak>)");
  CHECK(xml_escape(R"(a < b & "c")") == "a &lt; b &amp; &quot;c&quot;");
  CHECK(xml_escape("it's >") == "it&apos;s &gt;");
  const std::vector<std::string> texts{"Hi", "a & b"};
  CHECK(emit_plain_ssml(texts) == "<speak>Hi a &amp; b</speak>");

  const auto j = to_json(one[0]);
  CHECK(j.at("pitch") == "+0.00%");
  CHECK(j.at("clamped").at("rate") == false);
}

TEST_CASE("property: XML round trip recovers texts and attributes") {
  std::mt19937_64 rng(91);
  std::normal_distribution<double> normal(0.0, 2.0);
  const std::string alphabet = "abc XYZ&<>\"'.,!?";
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<SsmlPhrase> phrases;
    std::vector<std::string> texts;
    for (int i = 0; i < 1 + trial % 6; ++i) {
      std::string text = "w";
      for (int c = 0; c < 1 + static_cast<int>(rng() % 12); ++c) {
        text += alphabet[rng() % alphabet.size()];
      }
      text += "z";
      texts.push_back(text);
      phrases.push_back(z_to_attributes({normal(rng), normal(rng), normal(rng)},
                                        with_volume(60.0, 5.0), text));
    }
    const std::string doc = emit_ssml(phrases);
    const auto tree = parse_xml(doc);
    const auto& speak = tree.get_child("speak");
    std::size_t i = 0;
    for (const auto& [name, node] : speak) {
      if (name != "prosody") continue;
      REQUIRE(i < phrases.size());
      CHECK(node.get_value<std::string>() == phrases[i].text);
      CHECK(node.get<std::string>("<xmlattr>.pitch") == format_pitch(phrases[i].pitch_pct));
      CHECK(node.get<std::string>("<xmlattr>.volume") == format_volume(phrases[i].volume_db));
      CHECK(node.get<std::string>("<xmlattr>.rate") == format_rate(phrases[i].rate_pct));
      ++i;
    }
    CHECK(i == phrases.size());

    const std::string plain = emit_plain_ssml(texts);
    CHECK_NOTHROW(parse_xml(plain));
    static const std::regex wrapper(R"(<prosody [^>]*>|</prosody>)");
    CHECK(std::regex_replace(doc, wrapper, "") == plain);
  }
}

TEST_CASE("property: attributes are monotone in z until clamped") {
  const auto ref = with_volume(60.0, 5.0);
  for (int axis = 0; axis < 3; ++axis) {
    double last = -1e9;
    bool last_clamped = true;
    for (int step = 0; step <= 800; ++step) {
      std::array<double, 3> z{0, 0, 0};
      z[axis] = -4.0 + 0.01 * step;
      const auto p = z_to_attributes(z, ref);
      const double value = axis == 0 ? p.pitch_pct : axis == 1 ? p.volume_db : p.rate_pct;
      const bool clamped =
          axis == 0 ? p.clamped.pitch : axis == 1 ? p.clamped.volume : p.clamped.rate;
      if (!clamped && !last_clamped) CHECK(value > last);
      last_clamped = clamped;
      const double lo = axis == 0 ? -kPitchLimitPct : axis == 1 ? -kVolumeLimitDb : kRateMinPct;
      const double hi = axis == 0 ? kPitchLimitPct : axis == 1 ? kVolumeLimitDb : kRateMaxPct;
      CHECK(value >= lo);
      CHECK(value <= hi);
      CHECK(value >= last);
      last = value;
    }
  }
}
