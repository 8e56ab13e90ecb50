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

#ifndef BOOKPROSODY_FEATURES_CHARACTER_HPP_
#define BOOKPROSODY_FEATURES_CHARACTER_HPP_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "bookprosody/features/feature_matrix.hpp"
#include "bookprosody/features/pca.hpp"
#include "bookprosody/segment/segmenter.hpp"

namespace bookprosody::features {

enum class Gender { kMale, kFemale, kUnknown };

std::string_view gender_name(Gender g);
/// `male`/`m`, `female`/`f`, `unknown`/`u`/empty, case-insensitive.
std::optional<Gender> parse_gender(std::string_view s);

/// Characters of one book with their labels and embedding vectors.
struct CharacterTable {
  std::vector<std::string> ids;
  std::vector<Gender> genders;
  /// One row per character; may have zero columns.
  Eigen::MatrixXd vectors;

  std::size_t size() const noexcept { return ids.size(); }
  Eigen::Index dims() const noexcept { return vectors.cols(); }
  std::optional<std::size_t> find(std::string_view id) const;
};

/// `character_id<TAB>gender<TAB>d0..d{D-1}`; a first line starting with
/// `character_id` is taken as a header. Throws FormatError.
CharacterTable load_character_table(std::istream& in);
CharacterTable load_character_table(const std::filesystem::path& path);

/// segment_id -> character_id for the quotes of one chapter.
using Attribution = std::map<long, std::string>;

/// `segment_id,character_id`, optional header. Throws FormatError on
/// malformed lines and repeated segment ids.
Attribution load_attribution(std::istream& in);
Attribution load_attribution(const std::filesystem::path& path);

/// Appends a k-wide block to every row: the PCA-reduced vector of the
/// speaking character for quote segments with an attribution, zeros for
/// everything else. `segments` must contain every id in `base.row_ids`.
/// Throws UnknownCharacter when the attribution names a character missing
/// from `characters`.
FeatureMatrix append_character_embedding(const FeatureMatrix& base,
                                         std::span<const segment::Segment> segments,
                                         const CharacterTable& characters,
                                         const Attribution& attribution, const PcaModel& pca);

}  // namespace bookprosody::features

#endif  // BOOKPROSODY_FEATURES_CHARACTER_HPP_
