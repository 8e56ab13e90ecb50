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

#include "bookprosody/prosody/chapter_prosody.hpp"

#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "bookprosody/error.hpp"
#include "bookprosody/prosody/aggregate.hpp"
#include "bookprosody/util/text.hpp"

namespace bookprosody::prosody {

namespace {

using nlohmann::json;

constexpr std::array<const char*, 3> kMissingReason{"pitch_missing", "volume_missing",
                                                    "rate_missing"};

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

std::optional<double> number_or_null(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

}  // namespace

std::string ChapterProsody::flags_for(long segment_id) const {
  std::string out;
  for (const auto& [id, reason] : flags) {
    if (id != segment_id) continue;
    if (!out.empty()) out += '|';
    out += reason;
  }
  return out;
}

ChapterProsody compute_chapter_prosody(const align::AlignedChapter& chapter,
                                       std::vector<segment::Segment> segments,
                                       const dsp::FrameTrack& pitch,
                                       const dsp::FrameTrack& intensity) {
  ChapterProsody out;
  out.book_id = chapter.book_id;
  out.chapter_id = chapter.chapter_id;

  const PhoneZScores phone_z = phoneme_duration_zscores(chapter);
  const std::vector<std::optional<double>> rates = segment_rate(chapter, segments, phone_z);

  std::array<std::vector<std::optional<double>>, 3> values;
  out.raw.resize(segments.size());
  for (std::size_t i = 0; i < segments.size(); ++i) {
    RawProsody& raw = out.raw[i];
    raw.words = segments[i].word_span.size();
    raw.rate = rates[i];
    try {
      const auto [start, end] = align::segment_time_span(chapter, segments[i].word_span);
      if (auto p = segment_pitch(pitch, start, end)) {
        raw.pitch_hz = p->value;
        raw.pitch_frames = p->frames;
      }
      if (auto v = segment_volume(intensity, start, end)) {
        raw.volume_db = v->value;
        raw.volume_frames = v->frames;
      }
    } catch (const NoTimingInfo&) {
      // Left empty; imputed below.
    }
    values[kPitch].push_back(raw.pitch_hz);
    values[kVolume].push_back(raw.volume_db);
    values[kRate].push_back(raw.rate);
  }

  std::array<ZScores, 3> z;
  for (std::size_t a = 0; a < 3; ++a) {
    try {
      z[a] = chapter_zscores(values[a]);
    } catch (const NoData&) {
      z[a].z.assign(segments.size(), 0.0);
      z[a].imputed.assign(segments.size(), 1);
      z[a].degenerate = true;
      if (!segments.empty()) {
        out.warnings.push_back(std::string("no ") + kAttributeNames[a] +
                               " values in chapter; all imputed");
      }
    }
    out.stats[a].raw = z[a].stats;
    out.stats[a].degenerate = z[a].degenerate;
    if (z[a].degenerate && !segments.empty()) {
      out.warnings.push_back(std::string(kAttributeNames[a]) +
                             " has zero spread in chapter; z set to 0");
    }
  }

  for (std::size_t i = 0; i < segments.size(); ++i) {
    segments[i].prosody = segment::ProsodyTriple{z[kPitch].z[i], z[kVolume].z[i],
                                                 z[kRate].z[i]};
    for (std::size_t a = 0; a < 3; ++a) {
      if (z[a].imputed[i]) out.flags.emplace_back(segments[i].segment_id, kMissingReason[a]);
    }
  }
  out.segments = std::move(segments);
  return out;
}

bool ProsodyRow::imputed(Attribute a) const {
  for (std::string_view reason : util::split(flags, '|')) {
    if (reason == kMissingReason[a]) return true;
  }
  return false;
}

void write_prosody_csv(std::ostream& out, const ChapterProsody& chapter) {
  out << "segment_id,sentence_id,is_quote,pitch_z,volume_z,rate_z,flags\n";
  for (const auto& seg : chapter.segments) {
    const segment::ProsodyTriple z = seg.prosody.value_or(segment::ProsodyTriple{});
    out << seg.segment_id << ',' << seg.sentence_id << ',' << (seg.is_quote ? 1 : 0)
        << ',' << util::format_double(z[0]) << ',' << util::format_double(z[1]) << ','
        << util::format_double(z[2]) << ',' << chapter.flags_for(seg.segment_id) << '\n';
  }
}

std::vector<ProsodyRow> read_prosody_csv(std::istream& in) {
  std::vector<ProsodyRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = util::strip_cr(line);
    if (line_no == 1) {
      if (view != "segment_id,sentence_id,is_quote,pitch_z,volume_z,rate_z,flags") {
        throw FormatError(line_no, "unexpected prosody CSV header");
      }
      continue;
    }
    if (view.empty()) continue;
    const auto cells = util::split(view, ',');
    if (cells.size() != 7) throw FormatError(line_no, "expected 7 columns");
    ProsodyRow row;
    const auto seg = util::parse_long(cells[0]);
    const auto sent = util::parse_long(cells[1]);
    if (!seg || !sent || (cells[2] != "0" && cells[2] != "1")) {
      throw FormatError(line_no, "malformed id or quote flag");
    }
    row.segment_id = *seg;
    row.sentence_id = *sent;
    row.is_quote = cells[2] == "1";
    for (std::size_t a = 0; a < 3; ++a) {
      const auto v = util::parse_double(cells[3 + a]);
      if (!v) throw FormatError(line_no, "non-numeric z-score");
      row.z[a] = *v;
    }
    row.flags = std::string(cells[6]);
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json to_json(const ChapterProsody& chapter) {
  json segments = json::array();
  for (std::size_t i = 0; i < chapter.segments.size(); ++i) {
    const auto& s = chapter.segments[i];
    const RawProsody& raw = chapter.raw[i];
    json js = {{"segment_id", s.segment_id},
               {"sentence_id", s.sentence_id},
               {"text", s.text},
               {"char_begin", s.chars.begin},
               {"char_end", s.chars.end},
               {"word_begin", s.word_span.begin},
               {"word_end", s.word_span.end},
               {"is_quote", s.is_quote},
               {"raw",
                {{"pitch_hz", optional_number(raw.pitch_hz)},
                 {"pitch_frames", raw.pitch_frames},
                 {"volume_db", optional_number(raw.volume_db)},
                 {"volume_frames", raw.volume_frames},
                 {"rate", optional_number(raw.rate)},
                 {"words", raw.words}}}};
    if (s.prosody) js["z"] = *s.prosody;
    js["flags"] = chapter.flags_for(s.segment_id);
    segments.push_back(std::move(js));
  }
  json stats = json::object();
  for (std::size_t a = 0; a < 3; ++a) {
    stats[kAttributeNames[a]] = {{"mean", chapter.stats[a].raw.mean},
                                 {"std", chapter.stats[a].raw.std},
                                 {"degenerate", chapter.stats[a].degenerate}};
  }
  return {{"book_id", chapter.book_id},
          {"chapter_id", chapter.chapter_id},
          {"stats", std::move(stats)},
          {"warnings", chapter.warnings},
          {"segments", std::move(segments)}};
}

ChapterProsody chapter_prosody_from_json(const nlohmann::json& j) {
  try {
    ChapterProsody out;
    out.book_id = j.at("book_id").get<std::string>();
    out.chapter_id = j.at("chapter_id").get<std::string>();
    out.warnings = j.value("warnings", std::vector<std::string>{});
    for (std::size_t a = 0; a < 3; ++a) {
      const json& s = j.at("stats").at(kAttributeNames[a]);
      out.stats[a].raw = {s.at("mean").get<double>(), s.at("std").get<double>()};
      out.stats[a].degenerate = s.at("degenerate").get<bool>();
    }
    for (const json& js : j.at("segments")) {
      segment::Segment s;
      s.segment_id = js.at("segment_id").get<long>();
      s.sentence_id = js.at("sentence_id").get<long>();
      s.text = js.at("text").get<std::string>();
      s.chars = {js.at("char_begin").get<std::size_t>(), js.at("char_end").get<std::size_t>()};
      s.word_span = {js.at("word_begin").get<std::size_t>(),
                     js.at("word_end").get<std::size_t>()};
      s.is_quote = js.at("is_quote").get<bool>();
      if (js.contains("z")) s.prosody = js.at("z").get<segment::ProsodyTriple>();
      const json& jr = js.at("raw");
      RawProsody raw;
      raw.pitch_hz = number_or_null(jr.at("pitch_hz"));
      raw.pitch_frames = jr.at("pitch_frames").get<std::size_t>();
      raw.volume_db = number_or_null(jr.at("volume_db"));
      raw.volume_frames = jr.at("volume_frames").get<std::size_t>();
      raw.rate = number_or_null(jr.at("rate"));
      raw.words = jr.at("words").get<std::size_t>();
      const std::string flags = js.value("flags", std::string{});
      if (!flags.empty()) {
        for (std::string_view reason : util::split(flags, '|')) {
          out.flags.emplace_back(s.segment_id, std::string(reason));
        }
      }
      out.segments.push_back(std::move(s));
      out.raw.push_back(raw);
    }
    return out;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed chapter prosody JSON: ") + e.what());
  }
}

}  // namespace bookprosody::prosody
