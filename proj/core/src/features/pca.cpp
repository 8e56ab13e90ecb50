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

#include "bookprosody/features/pca.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include <Eigen/SVD>
#include <nlohmann/json.hpp>

#include "bookprosody/error.hpp"

namespace bookprosody::features {

Eigen::VectorXd PcaModel::explained_variance_ratio() const {
  if (!(total_variance > 0.0)) return Eigen::VectorXd::Zero(explained_variance.size());
  return explained_variance / total_variance;
}

PcaModel pca_fit(const Eigen::MatrixXd& data, Eigen::Index k) {
  const Eigen::Index n = data.rows();
  const Eigen::Index d = data.cols();
  if (n < 2) throw DataError("PCA needs at least 2 samples, got " + std::to_string(n));
  if (k < 1 || k > std::min(n, d)) {
    throw DimError("PCA k=" + std::to_string(k) + " must lie in [1, " +
                   std::to_string(std::min(n, d)) + "]");
  }
  if (!data.allFinite()) throw DataError("PCA input contains non-finite values");

  PcaModel model;
  model.mean = data.colwise().mean().transpose();
  const Eigen::MatrixXd centered = data.rowwise() - model.mean.transpose();
  const Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double dof = static_cast<double>(n - 1);

  model.components = svd.matrixV().leftCols(k).transpose();
  for (Eigen::Index r = 0; r < k; ++r) {
    Eigen::Index arg = 0;
    model.components.row(r).cwiseAbs().maxCoeff(&arg);
    if (model.components(r, arg) < 0.0) model.components.row(r) *= -1.0;
  }
  model.explained_variance = s.head(k).array().square() / dof;
  model.total_variance = centered.squaredNorm() / dof;
  return model;
}

Eigen::MatrixXd pca_transform(const PcaModel& model, const Eigen::MatrixXd& data) {
  if (data.cols() != model.input_dims()) {
    throw DimError("PCA input has " + std::to_string(data.cols()) + " columns, model expects " +
                   std::to_string(model.input_dims()));
  }
  return (data.rowwise() - model.mean.transpose()) * model.components.transpose();
}

Eigen::VectorXd pca_transform(const PcaModel& model, const Eigen::VectorXd& x) {
  if (x.size() != model.input_dims()) {
    throw DimError("PCA input has " + std::to_string(x.size()) + " dimensions, model expects " +
                   std::to_string(model.input_dims()));
  }
  return model.components * (x - model.mean);
}

namespace {

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

Eigen::VectorXd from_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

nlohmann::json to_json(const PcaModel& model) {
  nlohmann::json components = nlohmann::json::array();
  for (Eigen::Index r = 0; r < model.k(); ++r) {
    components.push_back(to_vector(model.components.row(r).transpose()));
  }
  return {{"mean", to_vector(model.mean)},
          {"components", std::move(components)},
          {"explained_variance", to_vector(model.explained_variance)},
          {"total_variance", model.total_variance}};
}

PcaModel pca_from_json(const nlohmann::json& j) {
  try {
    PcaModel model;
    model.mean = from_vector(j.at("mean").get<std::vector<double>>());
    const auto rows = j.at("components").get<std::vector<std::vector<double>>>();
    model.components.resize(static_cast<Eigen::Index>(rows.size()), model.mean.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (static_cast<Eigen::Index>(rows[r].size()) != model.mean.size()) {
        throw SchemaError("PCA component " + std::to_string(r) + " has the wrong length");
      }
      model.components.row(static_cast<Eigen::Index>(r)) = from_vector(rows[r]).transpose();
    }
    model.explained_variance = from_vector(j.at("explained_variance").get<std::vector<double>>());
    model.total_variance = j.at("total_variance").get<double>();
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed PCA model: ") + e.what());
  }
}

}  // namespace bookprosody::features
