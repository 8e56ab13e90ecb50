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

#include "bookprosody/eval/binomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "bookprosody/error.hpp"

namespace bookprosody::eval {

double log_binomial_coefficient(long n, long k) {
  if (n < 0 || k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  const auto nd = static_cast<double>(n);
  const auto kd = static_cast<double>(k);
  return std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0);
}

double log_binomial_pmf(long n, long k, double p) {
  const double lc = log_binomial_coefficient(n, k);
  if (!std::isfinite(lc)) return lc;
  return lc + static_cast<double>(k) * std::log(p) + static_cast<double>(n - k) * std::log1p(-p);
}

double binomial_upper_tail(long k, long n, double p) {
  if (n < 0) throw DataError("binomial n must be >= 0");
  if (!(p > 0.0 && p < 1.0)) throw DataError("binomial p must lie in (0, 1)");
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;

  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(n - k + 1));
  for (long i = k; i <= n; ++i) terms.push_back(log_binomial_pmf(n, i, p));
  const double peak = *std::max_element(terms.begin(), terms.end());
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - peak);
  return std::min(1.0, std::exp(peak + std::log(sum)));
}

}  // namespace bookprosody::eval
