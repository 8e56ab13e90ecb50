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

#include "bookprosody/prosody/zscore.hpp"

#include <cmath>

#include "bookprosody/error.hpp"

namespace bookprosody::prosody {

MeanStd population_stats(std::span<const double> values) {
  if (values.empty()) return {};
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(values.size()))};
}

ZScores chapter_zscores(std::span<const std::optional<double>> values) {
  std::vector<double> present;
  present.reserve(values.size());
  for (const auto& v : values) {
    if (v) present.push_back(*v);
  }
  if (present.empty()) throw NoData("no values present to z-score");

  ZScores out;
  out.stats = population_stats(present);
  // Relative test so that spreads which are pure rounding noise around a
  // large constant still count as degenerate.
  const double scale = std::max(1.0, std::abs(out.stats.mean));
  out.degenerate = !(out.stats.std > 1e-12 * scale);

  out.z.resize(values.size(), 0.0);
  out.imputed.resize(values.size(), 0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i]) {
      out.imputed[i] = 1;
    } else if (!out.degenerate) {
      out.z[i] = (*values[i] - out.stats.mean) / out.stats.std;
    }
  }
  return out;
}

}  // namespace bookprosody::prosody
