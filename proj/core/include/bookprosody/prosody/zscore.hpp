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

#ifndef BOOKPROSODY_PROSODY_ZSCORE_HPP_
#define BOOKPROSODY_PROSODY_ZSCORE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace bookprosody::prosody {

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // population
};

/// Population mean and standard deviation. Empty input gives {0, 0}.
MeanStd population_stats(std::span<const double> values);

struct ZScores {
  std::vector<double> z;
  /// 1 where the input had a gap and z was imputed as 0.
  std::vector<std::uint8_t> imputed;
  MeanStd stats;
  /// Zero spread among present values; every z is 0.
  bool degenerate = false;
};

/// z-scores of the present values using population std. Gaps become z = 0
/// and are marked imputed. Throws NoData if no value is present.
ZScores chapter_zscores(std::span<const std::optional<double>> values);

}  // namespace bookprosody::prosody

#endif  // BOOKPROSODY_PROSODY_ZSCORE_HPP_
