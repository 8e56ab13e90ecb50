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

#ifndef BOOKPROSODY_FEATURES_TFIDF_HPP_
#define BOOKPROSODY_FEATURES_TFIDF_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bookprosody/features/feature_matrix.hpp"

namespace bookprosody::features {

struct TfidfConfig {
  /// Minimum number of documents a term must occur in.
  std::size_t min_df = 2;
  /// Keep only the most frequent terms (by corpus count); 0 keeps all.
  std::size_t max_features = 0;
};

struct TfidfModel {
  std::vector<std::string> vocabulary;  // sorted
  std::vector<double> idf;
  std::size_t documents = 0;
  TfidfConfig config;

  std::optional<std::size_t> index_of(std::string_view term) const;
  /// Must be called after editing `vocabulary` by hand.
  void build_index();

 private:
  std::unordered_map<std::string, std::size_t> index_;
};

/// Lowercased maximal runs of ASCII letters and digits.
std::vector<std::string> tfidf_terms(std::string_view text);

/// Smoothed idf: ln((1 + N) / (1 + df)) + 1. Throws NoData when no document
/// contains a term, or when the df filter leaves an empty vocabulary.
TfidfModel tfidf_fit(std::span<const std::string> documents, const TfidfConfig& config = {});

/// Term count times idf, then each row scaled to unit L2 norm. Rows without
/// any known term stay zero.
RowMatrix tfidf_transform(const TfidfModel& model, std::span<const std::string> documents);

nlohmann::json to_json(const TfidfModel& model);
TfidfModel tfidf_from_json(const nlohmann::json& j);

}  // namespace bookprosody::features

#endif  // BOOKPROSODY_FEATURES_TFIDF_HPP_
