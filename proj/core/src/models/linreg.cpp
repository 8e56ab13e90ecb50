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

#include "bookprosody/models/linreg.hpp"

#include <string>

#include "bookprosody/error.hpp"
#include "bookprosody/util/text.hpp"

namespace bookprosody::models {

ParamLayout linreg_layout(Eigen::Index input_dims) {
  ParamLayout layout;
  layout.add("weight", kTargets, input_dims);
  layout.add("bias", kTargets, 1);
  return layout;
}

TrainedModel linreg_fit(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, double ridge) {
  if (x.rows() < 1) throw DataError("linear regression needs at least one row");
  if (x.rows() != y.rows()) {
    throw DataError("X has " + std::to_string(x.rows()) + " rows, Y has " +
                    std::to_string(y.rows()));
  }
  if (y.cols() != kTargets) throw DataError("Y must have 3 columns");
  if (!x.allFinite() || !y.allFinite()) throw DataError("non-finite value in regression input");

  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  Eigen::MatrixXd a(n, d + 1);
  a.leftCols(d) = x;
  a.col(d).setOnes();
  Eigen::MatrixXd gram = a.transpose() * a;
  gram.diagonal().head(d).array() += ridge;
  const Eigen::MatrixXd rhs = a.transpose() * y;
  Eigen::MatrixXd solution = gram.ldlt().solve(rhs);
  if (!solution.allFinite()) {
    solution = gram.completeOrthogonalDecomposition().solve(rhs);
  }
  if (!solution.allFinite()) throw DataError("normal equations have no finite solution");

  TrainedModel model;
  model.kind = ModelKind::kLinreg;
  model.input_dims = d;
  model.layout = linreg_layout(d);
  model.params.resize(model.layout.size());
  view(model.params, model.layout.at("weight")) = solution.topRows(d).transpose();
  view(model.params, model.layout.at("bias")) = solution.row(d).transpose();
  model.metadata["solver"] = "normal equations (LDLT)";
  model.metadata["ridge"] = util::format_double(ridge);
  return model;
}

Eigen::MatrixXd linreg_forward(const TrainedModel& model, const Eigen::MatrixXd& x) {
  const auto w = view(model.params, model.layout.at("weight"));
  const auto b = view(model.params, model.layout.at("bias"));
  return (x * w.transpose()).rowwise() + b.col(0).transpose();
}

}  // namespace bookprosody::models
