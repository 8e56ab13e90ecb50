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

#include "bookprosody/features/feature_matrix.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "bookprosody/error.hpp"
#include "bookprosody/util/text.hpp"

namespace bookprosody::features {

namespace {

struct TsvRow {
  long id = 0;
  std::vector<double> values;
};

struct TsvTable {
  std::string provenance;  // from the comment line, may be empty
  std::size_t dims = 0;
  std::vector<TsvRow> rows;
};

TsvTable read_tsv(std::istream& in) {
  TsvTable table;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::set<long> seen;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = util::strip_cr(line);
    if (view.empty()) continue;
    if (view.front() == '#') {
      constexpr std::string_view kKey = "# provenance: ";
      if (view.substr(0, kKey.size()) == kKey) {
        table.provenance = std::string(view.substr(kKey.size()));
      }
      continue;
    }
    const auto cells = util::split(view, '\t');
    if (!header_seen) {
      if (cells[0] != "segment_id") throw FormatError(line_no, "expected header segment_id");
      for (std::size_t c = 1; c < cells.size(); ++c) {
        if (cells[c] != "d" + std::to_string(c - 1)) {
          throw FormatError(line_no, "expected column d" + std::to_string(c - 1));
        }
      }
      table.dims = cells.size() - 1;
      header_seen = true;
      continue;
    }
    if (cells.size() != table.dims + 1) {
      throw FormatError(line_no, "expected " + std::to_string(table.dims + 1) + " columns, got " +
                                     std::to_string(cells.size()));
    }
    TsvRow row;
    const auto id = util::parse_long(cells[0]);
    if (!id) throw FormatError(line_no, "segment_id is not an integer");
    row.id = *id;
    if (!seen.insert(row.id).second) {
      throw FormatError(line_no, "duplicate segment_id " + std::to_string(row.id));
    }
    row.values.reserve(table.dims);
    for (std::size_t c = 1; c < cells.size(); ++c) {
      const auto v = util::parse_double(cells[c]);
      if (!v || !std::isfinite(*v)) {
        throw FormatError(line_no, "non-numeric cell in column " + std::to_string(c));
      }
      row.values.push_back(*v);
    }
    table.rows.push_back(std::move(row));
  }
  if (!header_seen) throw FormatError(line_no + 1, "missing header");
  return table;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

}  // namespace

std::string_view provenance_name(Provenance p) {
  switch (p) {
    case Provenance::kTfidf:
      return "tfidf";
    case Provenance::kWordVecPool:
      return "word_vec_pool";
    case Provenance::kExternal:
      return "external";
  }
  return "tfidf";
}

Provenance parse_provenance(std::string_view name) {
  if (name == "tfidf") return Provenance::kTfidf;
  if (name == "word_vec_pool") return Provenance::kWordVecPool;
  if (name == "external") return Provenance::kExternal;
  throw ConfigError("unknown feature kind '" + std::string(name) +
                    "' (expected tfidf, word_vec_pool or external)");
}

std::string FeatureMatrix::provenance_label() const {
  std::string out(provenance_name(provenance));
  if (with_character) out += "+char";
  return out;
}

void FeatureMatrix::validate() const {
  if (static_cast<std::size_t>(data.rows()) != row_ids.size()) {
    throw DataError("feature matrix has " + std::to_string(data.rows()) + " rows but " +
                    std::to_string(row_ids.size()) + " ids");
  }
  if (!data.allFinite()) throw DataError("feature matrix contains non-finite values");
}

void write_feature_tsv(std::ostream& out, const FeatureMatrix& m) {
  out << "# provenance: " << m.provenance_label() << '\n';
  out << "segment_id";
  for (Eigen::Index c = 0; c < m.dims(); ++c) out << "\td" << c;
  out << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out << m.row_ids[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < m.dims(); ++c) out << '\t' << util::format_double(m.data(r, c));
    out << '\n';
  }
}

void write_feature_tsv(const std::filesystem::path& path, const FeatureMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_feature_tsv(out, m);
  if (!out) throw IoError("write failed for " + path.string());
}

FeatureMatrix read_feature_tsv(std::istream& in) {
  TsvTable table = read_tsv(in);
  FeatureMatrix m;
  std::string_view label = table.provenance;
  constexpr std::string_view kChar = "+char";
  if (label.size() > kChar.size() && label.substr(label.size() - kChar.size()) == kChar) {
    m.with_character = true;
    label.remove_suffix(kChar.size());
  }
  if (!label.empty()) m.provenance = parse_provenance(label);
  m.data.resize(static_cast<Eigen::Index>(table.rows.size()),
                static_cast<Eigen::Index>(table.dims));
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    m.row_ids.push_back(table.rows[r].id);
    for (std::size_t c = 0; c < table.dims; ++c) {
      m.data(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = table.rows[r].values[c];
    }
  }
  return m;
}

FeatureMatrix read_feature_tsv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_feature_tsv(in);
}

FeatureMatrix load_external_embeddings(std::istream& in, std::span<const long> expected_ids) {
  TsvTable table = read_tsv(in);
  std::map<long, std::size_t> by_id;
  for (std::size_t r = 0; r < table.rows.size(); ++r) by_id.emplace(table.rows[r].id, r);

  std::vector<long> missing;
  std::set<long> expected(expected_ids.begin(), expected_ids.end());
  for (long id : expected_ids) {
    if (!by_id.count(id)) missing.push_back(id);
  }
  std::vector<long> surplus;
  for (const auto& [id, r] : by_id) {
    if (!expected.count(id)) surplus.push_back(id);
  }
  if (!missing.empty() || !surplus.empty()) {
    throw RowMismatch(std::move(missing), std::move(surplus));
  }

  FeatureMatrix m;
  m.provenance = Provenance::kExternal;
  m.data.resize(static_cast<Eigen::Index>(expected_ids.size()),
                static_cast<Eigen::Index>(table.dims));
  for (std::size_t r = 0; r < expected_ids.size(); ++r) {
    const auto& values = table.rows[by_id.at(expected_ids[r])].values;
    for (std::size_t c = 0; c < table.dims; ++c) {
      m.data(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = values[c];
    }
    m.row_ids.push_back(expected_ids[r]);
  }
  return m;
}

FeatureMatrix load_external_embeddings(const std::filesystem::path& path,
                                       std::span<const long> expected_ids) {
  auto in = open_input(path);
  return load_external_embeddings(in, expected_ids);
}

}  // namespace bookprosody::features
