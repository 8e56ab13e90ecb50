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

#ifndef BOOKPROSODY_MODELS_SPLIT_HPP_
#define BOOKPROSODY_MODELS_SPLIT_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace bookprosody::models {

inline constexpr double kDefaultTrainRatio = 0.75;

struct BookSplit {
  std::uint64_t seed = 0;
  double train_ratio = kDefaultTrainRatio;
  /// In shuffled order; the tail supplies validation chapters.
  std::vector<std::string> train;
  std::vector<std::string> test;  // sorted

  bool is_train(std::string_view book_id) const;
  bool is_test(std::string_view book_id) const;
};

/// Deduplicates and sorts the ids, shuffles them with the seed and puts the
/// first floor(ratio * n) books in the training partition (at least one
/// book on each side when n >= 2). Throws ConfigError unless 0 < ratio < 1
/// and NoData for an empty list.
BookSplit split_books(std::vector<std::string> book_ids, double train_ratio, std::uint64_t seed);

nlohmann::json to_json(const BookSplit& split);
BookSplit split_from_json(const nlohmann::json& j);

}  // namespace bookprosody::models

#endif  // BOOKPROSODY_MODELS_SPLIT_HPP_
