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

#ifndef BOOKPROSODY_MODELS_MLP_HPP_
#define BOOKPROSODY_MODELS_MLP_HPP_

#include <cstdint>

#include <Eigen/Dense>

#include "bookprosody/models/params.hpp"
#include "bookprosody/models/trained_model.hpp"

namespace bookprosody::models {

struct MlpConfig {
  int hidden1 = 10;
  int hidden2 = 10;
  int max_epochs = 200;
  int batch_size = 32;
  AdamConfig adam;
  /// L2 penalty on weights (not biases), scaled by 1 / (2 * batch rows).
  double l2 = 1e-4;
  /// Stop once the epoch loss has not improved by `tol` for this many
  /// epochs; 0 trains for max_epochs.
  int n_iter_no_change = 0;
  double tol = 1e-4;
  bool standardize = true;
  std::uint64_t seed = 0;
};

/// Layout: `w1` (h1 x D), `b1`, `w2` (h2 x h1), `b2`, `w3` (3 x h2), `b3`.
ParamLayout mlp_layout(Eigen::Index input_dims, int hidden1, int hidden2);

/// Two ReLU layers and a linear output, trained with Adam on MSE.
/// Throws DataError for bad input and TrainingDiverged when the loss
/// stops being finite.
TrainedModel mlp_fit(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, const MlpConfig& config);

/// Mean squared error over all outputs plus the L2 term. `x` is D x n and
/// `y` is 3 x n (one column per sample). Writes d(loss)/d(params) into
/// `grad` when non-null.
double mlp_loss(const ParamLayout& layout, const Eigen::VectorXd& params,
                const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, double l2,
                Eigen::VectorXd* grad);

/// rows x 3 outputs for rows of (already standardised) features.
Eigen::MatrixXd mlp_forward(const ParamLayout& layout, const Eigen::VectorXd& params,
                            const Eigen::MatrixXd& rows);

}  // namespace bookprosody::models

#endif  // BOOKPROSODY_MODELS_MLP_HPP_
