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

#ifndef BOOKPROSODY_FEATURES_PCA_HPP_
#define BOOKPROSODY_FEATURES_PCA_HPP_

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

namespace bookprosody::features {

struct PcaModel {
  Eigen::VectorXd mean;
  /// k x D, orthonormal rows.
  Eigen::MatrixXd components;
  /// Sample variance along each component, non-increasing.
  Eigen::VectorXd explained_variance;
  /// Sum of the sample variances of all input dimensions.
  double total_variance = 0.0;

  Eigen::Index k() const noexcept { return components.rows(); }
  Eigen::Index input_dims() const noexcept { return components.cols(); }
  Eigen::VectorXd explained_variance_ratio() const;
};

/// Top-k principal axes via thin SVD of the centered data (rows are
/// samples). Each component is signed so its largest-magnitude entry is
/// positive. Throws DataError with fewer than 2 rows and DimError when
/// k is 0 or exceeds min(rows, cols).
PcaModel pca_fit(const Eigen::MatrixXd& data, Eigen::Index k);

/// Rows of `data` projected onto the components after centering.
Eigen::MatrixXd pca_transform(const PcaModel& model, const Eigen::MatrixXd& data);
Eigen::VectorXd pca_transform(const PcaModel& model, const Eigen::VectorXd& x);

nlohmann::json to_json(const PcaModel& model);
PcaModel pca_from_json(const nlohmann::json& j);

}  // namespace bookprosody::features

#endif  // BOOKPROSODY_FEATURES_PCA_HPP_
