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

#ifndef BOOKPROSODY_MODELS_EVALUATE_HPP_
#define BOOKPROSODY_MODELS_EVALUATE_HPP_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "bookprosody/models/trained_model.hpp"

namespace bookprosody::models {

enum class Subset { kAll, kDialogue };

std::string_view subset_name(Subset s);
/// `all` or `dialogue`. Throws ConfigError.
Subset parse_subset(std::string_view name);

/// Predictions and ground truth for the segments of one chapter.
struct ChapterEval {
  std::string book_id;
  std::string chapter_id;
  Eigen::MatrixXd predicted;  // n x 3
  Eigen::MatrixXd target;     // n x 3
  std::vector<std::uint8_t> is_quote;
  /// n x 3, 1 where the target is a measured (not imputed) value; empty
  /// means every target counts.
  Eigen::MatrixXd mask;
};

struct ChapterScore {
  std::string book_id;
  std::string chapter_id;
  std::size_t segments = 0;
  /// Pearson r per attribute; empty with fewer than 2 values or no spread.
  std::array<std::optional<double>, 3> pearson;
};

struct BookScore {
  std::string book_id;
  std::size_t chapters = 0;
  std::size_t segments = 0;
  std::array<std::optional<double>, 3> mse;
  /// Mean of the chapter correlations that exist.
  std::array<std::optional<double>, 3> mean_pearson;
};

struct EvalReport {
  Subset subset = Subset::kAll;
  std::size_t segments = 0;
  /// Pooled over all segments of the subset.
  std::array<double, 3> mse{};
  std::array<std::size_t, 3> counts{};
  std::vector<ChapterScore> chapters;
  std::vector<BookScore> books;  // sorted by book_id
};

/// Pearson correlation; empty with fewer than 2 points or zero variance.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

/// Pooled MSE per attribute and per-chapter correlations over the chosen
/// subset (dialogue keeps exactly the is_quote segments). Masked targets
/// are skipped. Throws NoData when the subset has no usable target.
EvalReport evaluate(std::span<const ChapterEval> chapters, Subset subset);

nlohmann::json to_json(const EvalReport& report);
/// `book_id,attribute,mse,mean_pearson,chapters,segments`, one line per
/// (book, attribute).
void write_report_csv(std::ostream& out, const EvalReport& report);

}  // namespace bookprosody::models

#endif  // BOOKPROSODY_MODELS_EVALUATE_HPP_
