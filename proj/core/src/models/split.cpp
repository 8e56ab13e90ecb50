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

#include "bookprosody/models/split.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "bookprosody/error.hpp"
#include "bookprosody/models/params.hpp"

namespace bookprosody::models {

bool BookSplit::is_train(std::string_view book_id) const {
  return std::find(train.begin(), train.end(), book_id) != train.end();
}

bool BookSplit::is_test(std::string_view book_id) const {
  return std::find(test.begin(), test.end(), book_id) != test.end();
}

BookSplit split_books(std::vector<std::string> book_ids, double train_ratio, std::uint64_t seed) {
  if (!(train_ratio > 0.0 && train_ratio < 1.0)) {
    throw ConfigError("train_ratio must lie strictly between 0 and 1");
  }
  std::sort(book_ids.begin(), book_ids.end());
  book_ids.erase(std::unique(book_ids.begin(), book_ids.end()), book_ids.end());
  if (book_ids.empty()) throw NoData("no books to split");

  Rng rng(seed);
  const auto order = shuffled_indices(static_cast<Eigen::Index>(book_ids.size()), rng);
  const std::size_t n = book_ids.size();
  auto n_train = static_cast<std::size_t>(std::floor(train_ratio * static_cast<double>(n)));
  if (n >= 2) n_train = std::clamp<std::size_t>(n_train, 1, n - 1);
  if (n == 1) n_train = 1;

  BookSplit split;
  split.seed = seed;
  split.train_ratio = train_ratio;
  for (std::size_t i = 0; i < n; ++i) {
    auto& id = book_ids[static_cast<std::size_t>(order[i])];
    (i < n_train ? split.train : split.test).push_back(id);
  }
  std::sort(split.test.begin(), split.test.end());
  return split;
}

nlohmann::json to_json(const BookSplit& split) {
  return {{"seed", split.seed},
          {"train_ratio", split.train_ratio},
          {"train", split.train},
          {"test", split.test}};
}

BookSplit split_from_json(const nlohmann::json& j) {
  try {
    BookSplit split;
    split.seed = j.at("seed").get<std::uint64_t>();
    split.train_ratio = j.at("train_ratio").get<double>();
    split.train = j.at("train").get<std::vector<std::string>>();
    split.test = j.at("test").get<std::vector<std::string>>();
    return split;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed split file: ") + e.what());
  }
}

}  // namespace bookprosody::models
