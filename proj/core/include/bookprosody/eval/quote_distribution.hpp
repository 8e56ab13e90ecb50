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

#ifndef BOOKPROSODY_EVAL_QUOTE_DISTRIBUTION_HPP_
#define BOOKPROSODY_EVAL_QUOTE_DISTRIBUTION_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace bookprosody::eval {

inline constexpr double kHistogramLow = -3.0;
inline constexpr double kHistogramHigh = 3.0;
inline constexpr double kBinWidth = 0.25;
inline constexpr std::size_t kBins = 24;

struct ClassSummary {
  std::size_t count = 0;
  std::optional<double> mean;
  std::optional<double> std;  // population
  std::array<std::size_t, kBins> histogram{};
  std::size_t below = 0;  // values < -3
  std::size_t above = 0;  // values > 3
};

struct QuoteDistribution {
  ClassSummary quote;
  ClassSummary non_quote;
  /// quote mean - non-quote mean, when both classes are present.
  std::optional<double> gap;
  std::vector<std::string> warnings;
};

/// Bin index for a value inside [-3, 3]; 3 itself falls in the last bin.
std::optional<std::size_t> histogram_bin(double value);

/// Splits `values` by `is_quote` and summarises each class. An empty class
/// is reported with a warning and no gap.
QuoteDistribution quote_distribution(std::span<const std::uint8_t> is_quote,
                                     std::span<const double> values);

nlohmann::json to_json(const QuoteDistribution& d);
/// `bin_low,bin_high,quote,non_quote`, then `below` and `above` rows.
void write_histogram_csv(std::ostream& out, const QuoteDistribution& d);

}  // namespace bookprosody::eval

#endif  // BOOKPROSODY_EVAL_QUOTE_DISTRIBUTION_HPP_
