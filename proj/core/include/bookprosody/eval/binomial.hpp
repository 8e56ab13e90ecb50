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

#ifndef BOOKPROSODY_EVAL_BINOMIAL_HPP_
#define BOOKPROSODY_EVAL_BINOMIAL_HPP_

namespace bookprosody::eval {

/// ln C(n, k); -inf outside 0 <= k <= n.
double log_binomial_coefficient(long n, long k);

/// ln P(X = k) for X ~ Binomial(n, p), 0 < p < 1.
double log_binomial_pmf(long n, long k, double p = 0.5);

/// One-sided upper tail P(X >= k), summed in log space. 1 for k <= 0 and
/// 0 for k > n. Throws DataError for n < 0 or p outside (0, 1).
double binomial_upper_tail(long k, long n, double p = 0.5);

}  // namespace bookprosody::eval

#endif  // BOOKPROSODY_EVAL_BINOMIAL_HPP_
