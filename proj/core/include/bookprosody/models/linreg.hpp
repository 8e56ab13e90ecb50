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

#ifndef BOOKPROSODY_MODELS_LINREG_HPP_
#define BOOKPROSODY_MODELS_LINREG_HPP_

#include <Eigen/Dense>

#include "bookprosody/models/trained_model.hpp"

namespace bookprosody::models {

inline constexpr double kDefaultRidge = 1e-8;

/// Least squares for Y ~ X W^T + b through the normal equations of the
/// intercept-augmented design, with `ridge` added to the diagonal of the
/// weight part of the Gram matrix only. Throws DataError for empty,
/// mismatched or non-finite input.
TrainedModel linreg_fit(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                        double ridge = kDefaultRidge);

/// Layout: `weight` (3 x D), `bias` (3 x 1).
ParamLayout linreg_layout(Eigen::Index input_dims);

/// rows x 3 predictions of a linreg model (no standardisation applied).
Eigen::MatrixXd linreg_forward(const TrainedModel& model, const Eigen::MatrixXd& x);

}  // namespace bookprosody::models

#endif  // BOOKPROSODY_MODELS_LINREG_HPP_
