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

#include "bookprosody/eval/quote_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <nlohmann/json.hpp>

#include "bookprosody/error.hpp"
#include "bookprosody/util/text.hpp"

namespace bookprosody::eval {

namespace {

ClassSummary summarise(const std::vector<double>& values) {
  ClassSummary s;
  s.count = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  s.mean = mean;
  s.std = std::sqrt(sq / static_cast<double>(values.size()));
  for (double v : values) {
    if (const auto bin = histogram_bin(v)) {
      ++s.histogram[*bin];
    } else if (v < kHistogramLow) {
      ++s.below;
    } else {
      ++s.above;
    }
  }
  return s;
}

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json to_json(const ClassSummary& s) {
  return {{"count", s.count},
          {"mean", optional_json(s.mean)},
          {"std", optional_json(s.std)},
          {"histogram", s.histogram},
          {"below", s.below},
          {"above", s.above}};
}

}  // namespace

std::optional<std::size_t> histogram_bin(double value) {
  if (!(value >= kHistogramLow && value <= kHistogramHigh)) return std::nullopt;
  const auto bin = static_cast<std::size_t>(std::floor((value - kHistogramLow) / kBinWidth));
  return std::min(bin, kBins - 1);
}

QuoteDistribution quote_distribution(std::span<const std::uint8_t> is_quote,
                                     std::span<const double> values) {
  if (is_quote.size() != values.size()) {
    throw DataError("quote flags and values differ in length");
  }
  std::vector<double> quote;
  std::vector<double> other;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw DataError("non-finite value in quote distribution");
    (is_quote[i] ? quote : other).push_back(values[i]);
  }
  QuoteDistribution d;
  d.quote = summarise(quote);
  d.non_quote = summarise(other);
  if (quote.empty()) d.warnings.emplace_back("no quote segments; summary covers non-quote only");
  if (other.empty()) d.warnings.emplace_back("no non-quote segments; summary covers quote only");
  if (d.quote.mean && d.non_quote.mean) d.gap = *d.quote.mean - *d.non_quote.mean;
  return d;
}

nlohmann::json to_json(const QuoteDistribution& d) {
  return {{"quote", to_json(d.quote)},
          {"non_quote", to_json(d.non_quote)},
          {"gap", optional_json(d.gap)},
          {"bin_width", kBinWidth},
          {"range", {kHistogramLow, kHistogramHigh}},
          {"warnings", d.warnings}};
}

void write_histogram_csv(std::ostream& out, const QuoteDistribution& d) {
  out << "bin_low,bin_high,quote,non_quote\n";
  for (std::size_t b = 0; b < kBins; ++b) {
    const double lo = kHistogramLow + kBinWidth * static_cast<double>(b);
    out << util::format_double(lo) << ',' << util::format_double(lo + kBinWidth) << ','
        << d.quote.histogram[b] << ',' << d.non_quote.histogram[b] << '\n';
  }
  out << "-inf," << util::format_double(kHistogramLow) << ',' << d.quote.below << ','
      << d.non_quote.below << '\n';
  out << util::format_double(kHistogramHigh) << ",inf," << d.quote.above << ','
      << d.non_quote.above << '\n';
}

}  // namespace bookprosody::eval
