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

#ifndef BOOKPROSODY_FEATURES_WORD_VECTORS_HPP_
#define BOOKPROSODY_FEATURES_WORD_VECTORS_HPP_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace bookprosody::features {

/// Pretrained word vectors (GloVe text format: a word followed by D numbers
/// per line, separated by single spaces).
class WordVectorTable {
 public:
  WordVectorTable() = default;
  explicit WordVectorTable(std::size_t dims) : dims_(dims) {}

  std::size_t dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return words_.size(); }

  /// Later duplicates of a word are ignored. Throws TableError on a
  /// dimension mismatch.
  void add(std::string word, std::span<const double> vector);

  /// Null when the word is not in the table.
  const double* find(std::string_view word) const;

 private:
  std::size_t dims_ = 0;
  std::unordered_map<std::string, std::size_t> words_;
  std::vector<double> data_;
};

/// Throws TableError when lines disagree on the dimension or hold a
/// non-numeric value. Optionally stops after `max_words` entries.
WordVectorTable load_word_vectors(std::istream& in, std::size_t max_words = 0);
WordVectorTable load_word_vectors(const std::filesystem::path& path, std::size_t max_words = 0);

struct PooledVector {
  Eigen::VectorXd vector;
  /// No token was found in the table; `vector` is zero.
  bool all_oov = false;
};

/// Mean of the vectors of the lowercased tokens present in the table.
PooledVector pool_word_vectors(std::span<const std::string> tokens, const WordVectorTable& table);

/// Lowercased word tokens of a segment, as used for pooling.
std::vector<std::string> pooling_tokens(std::string_view text);

}  // namespace bookprosody::features

#endif  // BOOKPROSODY_FEATURES_WORD_VECTORS_HPP_
