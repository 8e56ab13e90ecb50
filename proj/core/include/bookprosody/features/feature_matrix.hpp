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

#ifndef BOOKPROSODY_FEATURES_FEATURE_MATRIX_HPP_
#define BOOKPROSODY_FEATURES_FEATURE_MATRIX_HPP_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace bookprosody::features {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class Provenance { kTfidf, kWordVecPool, kExternal };

std::string_view provenance_name(Provenance p);
/// Accepts the names produced by provenance_name. Throws ConfigError.
Provenance parse_provenance(std::string_view name);

/// One feature row per segment of a chapter.
struct FeatureMatrix {
  RowMatrix data;
  std::vector<long> row_ids;
  Provenance provenance = Provenance::kTfidf;
  /// A character-embedding block was appended to the base features.
  bool with_character = false;

  Eigen::Index rows() const noexcept { return data.rows(); }
  Eigen::Index dims() const noexcept { return data.cols(); }

  /// e.g. `external+char`.
  std::string provenance_label() const;

  /// Throws DataError when row_ids and data disagree or a value is not finite.
  void validate() const;
};

/// Header `segment_id<TAB>d0..d{D-1}`, preceded by a `# provenance: ...`
/// comment line.
void write_feature_tsv(std::ostream& out, const FeatureMatrix& m);
void write_feature_tsv(const std::filesystem::path& path, const FeatureMatrix& m);

/// Reads the format above. Comment lines are optional.
FeatureMatrix read_feature_tsv(std::istream& in);
FeatureMatrix read_feature_tsv(const std::filesystem::path& path);

/// Externally computed sentence embeddings for one chapter, reordered to
/// `expected_ids`. Throws FormatError for malformed cells, a bad header or a
/// repeated id and RowMismatch when the id sets differ.
FeatureMatrix load_external_embeddings(std::istream& in, std::span<const long> expected_ids);
FeatureMatrix load_external_embeddings(const std::filesystem::path& path,
                                       std::span<const long> expected_ids);

}  // namespace bookprosody::features

#endif  // BOOKPROSODY_FEATURES_FEATURE_MATRIX_HPP_
