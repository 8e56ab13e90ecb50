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

#include "bookprosody/features/character.hpp"

#include <cmath>
#include <fstream>
#include <unordered_map>

#include "bookprosody/error.hpp"
#include "bookprosody/util/text.hpp"

namespace bookprosody::features {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view gender_name(Gender g) {
  switch (g) {
    case Gender::kMale:
      return "male";
    case Gender::kFemale:
      return "female";
    case Gender::kUnknown:
      return "unknown";
  }
  return "unknown";
}

std::optional<Gender> parse_gender(std::string_view s) {
  const std::string v = lower(trim(s));
  if (v == "male" || v == "m") return Gender::kMale;
  if (v == "female" || v == "f") return Gender::kFemale;
  if (v.empty() || v == "unknown" || v == "u") return Gender::kUnknown;
  return std::nullopt;
}

std::optional<std::size_t> CharacterTable::find(std::string_view id) const {
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] == id) return i;
  }
  return std::nullopt;
}

CharacterTable load_character_table(std::istream& in) {
  CharacterTable table;
  std::vector<std::vector<double>> rows;
  std::optional<std::size_t> dims;
  std::unordered_map<std::string, std::size_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = util::strip_cr(line);
    if (view.empty() || view.front() == '#') continue;
    const auto cells = util::split(view, '\t');
    if (table.ids.empty() && rows.empty() && cells[0] == "character_id") continue;
    if (cells.size() < 2) throw FormatError(line_no, "expected character_id and gender");
    const auto gender = parse_gender(cells[1]);
    if (!gender) throw FormatError(line_no, "unrecognised gender '" + std::string(cells[1]) + "'");
    const std::size_t d = cells.size() - 2;
    if (dims && *dims != d) {
      throw FormatError(line_no, std::to_string(d) + " vector columns, expected " +
                                     std::to_string(*dims));
    }
    dims = d;
    std::string id(trim(cells[0]));
    if (id.empty()) throw FormatError(line_no, "empty character_id");
    if (!seen.emplace(id, table.ids.size()).second) {
      throw FormatError(line_no, "duplicate character_id '" + id + "'");
    }
    std::vector<double> values;
    values.reserve(d);
    for (std::size_t c = 2; c < cells.size(); ++c) {
      const auto v = util::parse_double(cells[c]);
      if (!v || !std::isfinite(*v)) throw FormatError(line_no, "non-numeric vector value");
      values.push_back(*v);
    }
    table.ids.push_back(std::move(id));
    table.genders.push_back(*gender);
    rows.push_back(std::move(values));
  }
  table.vectors.resize(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(dims.value_or(0)));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      table.vectors(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return table;
}

CharacterTable load_character_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return load_character_table(in);
}

Attribution load_attribution(std::istream& in) {
  Attribution out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = util::strip_cr(line);
    if (view.empty() || view.front() == '#') continue;
    const auto cells = util::split(view, ',');
    if (out.empty() && cells[0] == "segment_id") continue;
    if (cells.size() != 2) throw FormatError(line_no, "expected segment_id,character_id");
    const auto id = util::parse_long(trim(cells[0]));
    if (!id) throw FormatError(line_no, "segment_id is not an integer");
    const std::string_view character = trim(cells[1]);
    if (character.empty()) throw FormatError(line_no, "empty character_id");
    if (!out.emplace(*id, std::string(character)).second) {
      throw FormatError(line_no, "segment " + std::to_string(*id) + " attributed twice");
    }
  }
  return out;
}

Attribution load_attribution(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return load_attribution(in);
}

FeatureMatrix append_character_embedding(const FeatureMatrix& base,
                                         std::span<const segment::Segment> segments,
                                         const CharacterTable& characters,
                                         const Attribution& attribution, const PcaModel& pca) {
  if (characters.dims() != pca.input_dims()) {
    throw DimError("character vectors have " + std::to_string(characters.dims()) +
                   " dimensions, PCA expects " + std::to_string(pca.input_dims()));
  }
  std::map<std::string, Eigen::VectorXd> reduced;
  for (const auto& [segment_id, character] : attribution) {
    if (reduced.count(character)) continue;
    const auto idx = characters.find(character);
    if (!idx) {
      throw UnknownCharacter("segment " + std::to_string(segment_id) +
                             " is attributed to unknown character '" + character + "'");
    }
    reduced.emplace(character,
                    pca_transform(pca, Eigen::VectorXd(characters.vectors.row(
                                           static_cast<Eigen::Index>(*idx)).transpose())));
  }

  std::unordered_map<long, bool> quote_by_id;
  for (const auto& s : segments) quote_by_id.emplace(s.segment_id, s.is_quote);

  const Eigen::Index k = pca.k();
  FeatureMatrix out;
  out.provenance = base.provenance;
  out.with_character = true;
  out.row_ids = base.row_ids;
  out.data = RowMatrix::Zero(base.rows(), base.dims() + k);
  out.data.leftCols(base.dims()) = base.data;
  for (Eigen::Index r = 0; r < base.rows(); ++r) {
    const long id = base.row_ids[static_cast<std::size_t>(r)];
    const auto q = quote_by_id.find(id);
    if (q == quote_by_id.end()) {
      throw DataError("no segment with id " + std::to_string(id) + " for feature row");
    }
    if (!q->second) continue;
    const auto a = attribution.find(id);
    if (a == attribution.end()) continue;
    out.data.row(r).tail(k) = reduced.at(a->second).transpose();
  }
  return out;
}

}  // namespace bookprosody::features
