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

#include "bookprosody/features/tfidf.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "bookprosody/error.hpp"

namespace bookprosody::features {

namespace {

bool is_term_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

}  // namespace

std::vector<std::string> tfidf_terms(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (is_term_char(c)) {
      current.push_back(lower(c));
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

std::optional<std::size_t> TfidfModel::index_of(std::string_view term) const {
  const auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void TfidfModel::build_index() {
  index_.clear();
  for (std::size_t i = 0; i < vocabulary.size(); ++i) index_.emplace(vocabulary[i], i);
}

TfidfModel tfidf_fit(std::span<const std::string> documents, const TfidfConfig& config) {
  std::map<std::string, std::size_t> df;
  std::map<std::string, std::size_t> total;
  for (const auto& doc : documents) {
    std::set<std::string> unique;
    for (auto& term : tfidf_terms(doc)) {
      ++total[term];
      unique.insert(std::move(term));
    }
    for (const auto& term : unique) ++df[term];
  }
  if (df.empty()) throw NoData("TF-IDF corpus contains no terms");

  std::vector<std::string> kept;
  for (const auto& [term, count] : df) {
    if (count >= std::max<std::size_t>(config.min_df, 1)) kept.push_back(term);
  }
  if (config.max_features > 0 && kept.size() > config.max_features) {
    std::stable_sort(kept.begin(), kept.end(), [&](const std::string& a, const std::string& b) {
      return total[a] > total[b];
    });
    kept.resize(config.max_features);
    std::sort(kept.begin(), kept.end());
  }
  if (kept.empty()) {
    throw NoData("no term reaches min_df=" + std::to_string(config.min_df));
  }

  TfidfModel model;
  model.config = config;
  model.documents = documents.size();
  const double n = static_cast<double>(documents.size());
  for (auto& term : kept) {
    const double d = static_cast<double>(df[term]);
    model.idf.push_back(std::log((1.0 + n) / (1.0 + d)) + 1.0);
    model.vocabulary.push_back(std::move(term));
  }
  model.build_index();
  return model;
}

RowMatrix tfidf_transform(const TfidfModel& model, std::span<const std::string> documents) {
  RowMatrix out = RowMatrix::Zero(static_cast<Eigen::Index>(documents.size()),
                                  static_cast<Eigen::Index>(model.vocabulary.size()));
  for (std::size_t r = 0; r < documents.size(); ++r) {
    const auto row = static_cast<Eigen::Index>(r);
    for (const auto& term : tfidf_terms(documents[r])) {
      if (auto idx = model.index_of(term)) out(row, static_cast<Eigen::Index>(*idx)) += 1.0;
    }
    for (Eigen::Index c = 0; c < out.cols(); ++c) {
      out(row, c) *= model.idf[static_cast<std::size_t>(c)];
    }
    const double norm = out.row(row).norm();
    if (norm > 0.0) out.row(row) /= norm;
  }
  return out;
}

nlohmann::json to_json(const TfidfModel& model) {
  return {{"vocabulary", model.vocabulary},
          {"idf", model.idf},
          {"documents", model.documents},
          {"min_df", model.config.min_df},
          {"max_features", model.config.max_features}};
}

TfidfModel tfidf_from_json(const nlohmann::json& j) {
  try {
    TfidfModel model;
    model.vocabulary = j.at("vocabulary").get<std::vector<std::string>>();
    model.idf = j.at("idf").get<std::vector<double>>();
    model.documents = j.at("documents").get<std::size_t>();
    model.config.min_df = j.value("min_df", std::size_t{2});
    model.config.max_features = j.value("max_features", std::size_t{0});
    if (model.idf.size() != model.vocabulary.size()) {
      throw SchemaError("TF-IDF vocabulary and idf lengths differ");
    }
    model.build_index();
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed TF-IDF model: ") + e.what());
  }
}

}  // namespace bookprosody::features
