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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bookprosody/error.hpp"
#include "bookprosody/prosody/aggregate.hpp"
#include "bookprosody/prosody/chapter_prosody.hpp"
#include "bookprosody/prosody/zscore.hpp"

using namespace bookprosody;
using namespace bookprosody::prosody;

namespace {

// sqrt(3/2): z of the extremes of three equally spaced values.
const double kZ3 = std::sqrt(1.5);

dsp::FrameTrack pitch_frames(std::vector<double> values, std::vector<std::uint8_t> voiced) {
  dsp::FrameTrack t;
  t.kind = dsp::TrackKind::kPitch;
  t.start_s = 0.005;
  t.values = std::move(values);
  t.voiced = std::move(voiced);
  return t;
}

dsp::FrameTrack intensity_frames(std::vector<double> values) {
  dsp::FrameTrack t;
  t.kind = dsp::TrackKind::kIntensity;
  t.start_s = 0.005;
  t.values = std::move(values);
  return t;
}

align::AlignedWord word_with_phones(std::vector<align::Phone> phones, double start) {
  align::AlignedWord w;
  w.token = "w";
  w.status = align::WordStatus::kAligned;
  w.start_s = start;
  double d = 0.0;
  for (const auto& p : phones) d += p.duration_s;
  w.end_s = start + d;
  w.phones = std::move(phones);
  return w;
}

std::vector<std::optional<double>> present(std::span<const double> v) {
  return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("segment_pitch") {
  SUBCASE("constant voiced frames") {
    const auto t = pitch_frames(std::vector<double>(50, 200.0), std::vector<std::uint8_t>(50, 1));
    const auto m = segment_pitch(t, 0.1, 0.3);
    REQUIRE(m);
    CHECK(m->value == 200.0);
    CHECK(m->frames == 20);
  }
  SUBCASE("alternating frames average arithmetically") {
    std::vector<double> v;
    for (int i = 0; i < 50; ++i) v.push_back(i % 2 ? 220.0 : 180.0);
    const auto m = segment_pitch(pitch_frames(v, std::vector<std::uint8_t>(50, 1)), 0.0, 0.2);
    REQUIRE(m);
    CHECK(m->value == doctest::Approx(200.0).epsilon(1e-12));
  }
  SUBCASE("unvoiced span has no value") {
    const auto t = pitch_frames(std::vector<double>(50, 0.0), std::vector<std::uint8_t>(50, 0));
    CHECK_FALSE(segment_pitch(t, 0.0, 0.5));
  }
  SUBCASE("only frames centered in [start, end) count") {
    std::vector<double> v(50, 100.0);
    v[10] = 400.0;  // center 0.105
    const auto t = pitch_frames(v, std::vector<std::uint8_t>(50, 1));
    CHECK(segment_pitch(t, 0.0, 0.105)->value == 100.0);
    CHECK(segment_pitch(t, 0.105, 0.115)->value == 400.0);
  }
}

TEST_CASE("segment_volume") {
  CHECK(segment_volume(intensity_frames(std::vector<double>(40, 80.0)), 0.0, 0.4)->value == 80.0);
  CHECK(segment_volume(intensity_frames({70.0, 90.0, 70.0, 90.0}), 0.0, 0.04)->value ==
        doctest::Approx(80.0).epsilon(1e-12));
  CHECK_FALSE(segment_volume(intensity_frames(std::vector<double>(10, -100.0)), 0.0, 0.1));
  const auto mixed = segment_volume(intensity_frames({-100.0, 60.0, -100.0, 62.0}), 0.0, 0.04);
  REQUIRE(mixed);
  CHECK(mixed->value == 61.0);
  CHECK(mixed->frames == 2);
}

TEST_CASE("phone_base_label") {
  CHECK(phone_base_label("ah_B") == "ah");
  CHECK(phone_base_label("ah") == "ah");
  CHECK(phone_base_label("sh_I") == "sh");
}

TEST_CASE("phoneme_duration_zscores") {
  align::AlignedChapter ch;
  ch.words.push_back(word_with_phones({{"ah_B", 0.1}, {"zh_E", 0.05}}, 0.0));
  ch.words.push_back(word_with_phones({{"ah_S", 0.2}}, 1.0));
  ch.words.push_back(word_with_phones({{"ah_B", 0.3}, {"iy_E", 0.1}}, 2.0));
  ch.words.push_back(word_with_phones({{"iy_S", 0.2}}, 3.0));
  ch.words.push_back(word_with_phones({{"iy_S", 0.3}}, 4.0));
  align::AlignedWord lost;
  lost.status = align::WordStatus::kNotFound;
  ch.words.push_back(lost);

  const auto z = phoneme_duration_zscores(ch);
  REQUIRE(z.by_word.size() == 6);
  CHECK(z.by_word[0][0] == doctest::Approx(-kZ3).epsilon(1e-9));
  CHECK(z.by_word[1][0] == doctest::Approx(0.0));
  CHECK(z.by_word[2][0] == doctest::Approx(kZ3).epsilon(1e-9));
  SUBCASE("a label seen once scores zero") { CHECK(z.by_word[0][1] == 0.0); }
  SUBCASE("labels with identical duration lists score identically") {
    CHECK(z.by_word[2][1] == doctest::Approx(z.by_word[0][0]).epsilon(1e-12));
    CHECK(z.by_word[3][0] == doctest::Approx(z.by_word[1][0]).epsilon(1e-12));
    CHECK(z.by_word[4][0] == doctest::Approx(z.by_word[2][0]).epsilon(1e-12));
  }
  CHECK(z.by_word[5].empty());
}

TEST_CASE("segment_rate") {
  align::AlignedChapter ch;
  for (int i = 0; i < 4; ++i) ch.words.push_back(word_with_phones({{"ah", 0.1}}, i));
  PhoneZScores z;
  z.by_word = {{0.0}, {0.0}, {1.0, 1.0}, {}};
  std::vector<segment::Segment> segs(3);
  segs[0].word_span = {0, 2};
  segs[1].word_span = {2, 3};
  segs[2].word_span = {3, 4};
  const auto raw = segment_rate(ch, segs, z);
  REQUIRE(raw.size() == 3);
  CHECK(*raw[0] == 0.0);
  CHECK(*raw[1] == -1.0);
  CHECK_FALSE(raw[2]);

  const std::vector<double> means{-1.0, 0.0, 1.0};
  const auto zs = chapter_zscores(present(means));
  CHECK(zs.z[0] == doctest::Approx(-1.2247).epsilon(1e-4));
  CHECK(zs.z[1] == doctest::Approx(0.0));
  CHECK(zs.z[2] == doctest::Approx(1.2247).epsilon(1e-4));
}

TEST_CASE("chapter_zscores: examples") {
  SUBCASE("three values") {
    const std::vector<double> v{10, 20, 30};
    const auto z = chapter_zscores(present(v));
    CHECK(z.z[0] == doctest::Approx(-kZ3).epsilon(1e-12));
    CHECK(z.z[1] == 0.0);
    CHECK(z.z[2] == doctest::Approx(kZ3).epsilon(1e-12));
    CHECK(z.stats.mean == 20.0);
    CHECK_FALSE(z.degenerate);
  }
  SUBCASE("constant values are degenerate") {
    const std::vector<double> v{5, 5, 5};
    const auto z = chapter_zscores(present(v));
    CHECK(z.degenerate);
    for (double x : z.z) CHECK(x == 0.0);
  }
  SUBCASE("gaps are imputed as zero") {
    const std::vector<std::optional<double>> v{10.0, std::nullopt, 30.0};
    const auto z = chapter_zscores(v);
    CHECK(z.z == std::vector<double>{-1.0, 0.0, 1.0});
    CHECK(z.imputed == std::vector<std::uint8_t>{0, 1, 0});
    CHECK(z.stats.std == 10.0);
  }
  SUBCASE("nothing present") {
    CHECK_THROWS_AS(chapter_zscores(std::vector<std::optional<double>>{}), NoData);
    CHECK_THROWS_AS(chapter_zscores(std::vector<std::optional<double>>{std::nullopt}), NoData);
  }
}

TEST_CASE("property: z-scores are affine invariant with zero mean and unit std") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> pick_a(0.0, 10.0);
  std::uniform_real_distribution<double> pick_b(-100.0, 100.0);
  std::normal_distribution<double> value(0.0, 3.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = std::max(pick_a(rng), 1e-3);
    const double b = pick_b(rng);
    const std::size_t n = 2 + static_cast<std::size_t>(unit(rng) * 40);
    std::vector<std::optional<double>> x(n);
    std::vector<std::optional<double>> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 1 && unit(rng) < 0.1) continue;
      x[i] = value(rng);
      y[i] = a * *x[i] + b;
    }
    const auto zx = chapter_zscores(x);
    const auto zy = chapter_zscores(y);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(zx.z[i] - zy.z[i]) <= 1e-9);

    double sum = 0.0;
    double sq = 0.0;
    std::size_t m = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (zx.imputed[i]) continue;
      sum += zx.z[i];
      sq += zx.z[i] * zx.z[i];
      ++m;
    }
    CHECK(std::abs(sum / m) <= 1e-9);
    CHECK(std::abs(std::sqrt(sq / m - (sum / m) * (sum / m)) - 1.0) <= 1e-9);
  }
}

TEST_CASE("property: permuting segments permutes rate z-scores") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> dur(0.03, 0.2);
  for (int trial = 0; trial < 30; ++trial) {
    align::AlignedChapter ch;
    const std::vector<std::string> labels{"ah", "t", "s"};
    for (int i = 0; i < 20; ++i) {
      ch.words.push_back(word_with_phones(
          {{labels[i % 3], dur(rng)}, {labels[(i + 1) % 3], dur(rng)}}, i));
    }
    const auto pz = phoneme_duration_zscores(ch);
    std::vector<segment::Segment> segs;
    for (std::size_t b = 0; b < 20; b += 4) {
      segment::Segment s;
      s.segment_id = static_cast<long>(segs.size());
      s.word_span = {b, b + 4};
      segs.push_back(s);
    }
    std::vector<std::size_t> perm(segs.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<segment::Segment> shuffled;
    for (std::size_t p : perm) shuffled.push_back(segs[p]);

    const auto base = chapter_zscores(segment_rate(ch, segs, pz));
    const auto moved = chapter_zscores(segment_rate(ch, shuffled, pz));
    for (std::size_t i = 0; i < perm.size(); ++i) {
      CHECK(moved.z[i] == doctest::Approx(base.z[perm[i]]).epsilon(1e-12));
    }
  }
}

TEST_CASE("compute_chapter_prosody: flags, CSV and JSON round trips") {
  align::AlignedChapter ch;
  ch.book_id = "b1";
  ch.chapter_id = "c1";
  ch.text = "a b c d";
  const std::vector<double> durations{0.10, 0.20, 0.15, 0.12};
  for (int i = 0; i < 4; ++i) {
    auto w = word_with_phones({{"ah", durations[i]}, {"t", durations[3 - i]}}, 0.5 * i);
    w.char_begin = 2 * i;
    w.char_end = 2 * i + 1;
    ch.words.push_back(w);
  }
  std::vector<segment::Segment> segs(4);
  for (int i = 0; i < 4; ++i) {
    segs[i].segment_id = i;
    segs[i].sentence_id = i / 2;
    segs[i].word_span = {static_cast<std::size_t>(i), static_cast<std::size_t>(i + 1)};
    segs[i].chars = {static_cast<std::size_t>(2 * i), static_cast<std::size_t>(2 * i + 1)};
    segs[i].text = std::string(1, static_cast<char>('a' + i));
    segs[i].is_quote = i == 1;
  }
  // Word i covers [0.5 i, 0.5 i + ~0.25); segment 2 is unvoiced.
  std::vector<double> f0(250, 0.0);
  std::vector<std::uint8_t> voiced(250, 0);
  std::vector<double> db(250, dsp::kIntensityFloorDb);
  const std::vector<double> levels{150.0, 180.0, 0.0, 210.0};
  for (int i = 0; i < 4; ++i) {
    for (int f = 50 * i; f < 50 * i + 20; ++f) {
      if (levels[i] > 0.0) {
        f0[f] = levels[i];
        voiced[f] = 1;
      }
      db[f] = 60.0 + 5.0 * i;
    }
  }
  const auto cp = compute_chapter_prosody(ch, segs, pitch_frames(f0, voiced), intensity_frames(db));
  REQUIRE(cp.segments.size() == 4);
  CHECK(cp.flags_for(2) == "pitch_missing");
  CHECK(cp.flags_for(0).empty());
  CHECK((*cp.segments[2].prosody)[0] == 0.0);
  CHECK(cp.raw[3].pitch_hz == doctest::Approx(210.0));
  CHECK(cp.stats[kPitch].raw.mean == doctest::Approx(180.0));
  CHECK((*cp.segments[3].prosody)[1] == doctest::Approx(3.0 / std::sqrt(5.0)).epsilon(1e-9));

  std::stringstream csv;
  write_prosody_csv(csv, cp);
  const auto rows = read_prosody_csv(csv);
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(rows[i].segment_id == cp.segments[i].segment_id);
    CHECK(rows[i].is_quote == cp.segments[i].is_quote);
    CHECK(rows[i].z == *cp.segments[i].prosody);
  }
  CHECK(rows[2].imputed());

  const auto back = chapter_prosody_from_json(nlohmann::json::parse(to_json(cp).dump()));
  CHECK(back.book_id == "b1");
  CHECK(back.flags == cp.flags);
  REQUIRE(back.segments.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(*back.segments[i].prosody == *cp.segments[i].prosody);
    CHECK(back.segments[i].text == cp.segments[i].text);
  }

  std::istringstream bad("segment_id,oops\n");
  CHECK_THROWS_AS(read_prosody_csv(bad), FormatError);
}
