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

#include "bookprosody/features/word_vectors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "bookprosody/error.hpp"
#include "bookprosody/segment/tokenize.hpp"
#include "bookprosody/util/text.hpp"

namespace bookprosody::features {

namespace {

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

}  // namespace

void WordVectorTable::add(std::string word, std::span<const double> vector) {
  if (vector.size() != dims_) {
    throw TableError("word vector for '" + word + "' has " + std::to_string(vector.size()) +
                     " dimensions, table has " + std::to_string(dims_));
  }
  if (words_.count(word)) return;
  words_.emplace(std::move(word), data_.size() / std::max<std::size_t>(dims_, 1));
  data_.insert(data_.end(), vector.begin(), vector.end());
}

const double* WordVectorTable::find(std::string_view word) const {
  const auto it = words_.find(std::string(word));
  if (it == words_.end()) return nullptr;
  return data_.data() + it->second * dims_;
}

WordVectorTable load_word_vectors(std::istream& in, std::size_t max_words) {
  WordVectorTable table;
  bool first = true;
  std::string line;
  std::size_t line_no = 0;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = util::strip_cr(line);
    if (view.empty()) continue;
    auto cells = util::split(view, ' ');
    while (!cells.empty() && cells.back().empty()) cells.pop_back();
    if (cells.size() < 2) {
      throw TableError("line " + std::to_string(line_no) + ": expected a word and a vector");
    }
    values.clear();
    for (std::size_t c = 1; c < cells.size(); ++c) {
      const auto v = util::parse_double(cells[c]);
      if (!v || !std::isfinite(*v)) {
        throw TableError("line " + std::to_string(line_no) + ": non-numeric value '" +
                         std::string(cells[c]) + "'");
      }
      values.push_back(*v);
    }
    if (first) {
      table = WordVectorTable(values.size());
      first = false;
    } else if (values.size() != table.dims()) {
      throw TableError("line " + std::to_string(line_no) + ": " + std::to_string(values.size()) +
                       " dimensions, expected " + std::to_string(table.dims()));
    }
    table.add(std::string(cells[0]), values);
    if (max_words > 0 && table.size() >= max_words) break;
  }
  return table;
}

WordVectorTable load_word_vectors(const std::filesystem::path& path, std::size_t max_words) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return load_word_vectors(in, max_words);
}

PooledVector pool_word_vectors(std::span<const std::string> tokens, const WordVectorTable& table) {
  PooledVector out;
  out.vector = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(table.dims()));
  std::size_t hits = 0;
  for (const auto& token : tokens) {
    const double* v = table.find(to_lower(token));
    if (v == nullptr) continue;
    out.vector += Eigen::Map<const Eigen::VectorXd>(v, static_cast<Eigen::Index>(table.dims()));
    ++hits;
  }
  if (hits == 0) {
    out.all_oov = true;
  } else {
    out.vector /= static_cast<double>(hits);
  }
  return out;
}

std::vector<std::string> pooling_tokens(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& token : segment::tokenize(text)) {
    if (token.kind == segment::TokenKind::kWord) out.push_back(to_lower(token.text));
  }
  return out;
}

}  // namespace bookprosody::features
