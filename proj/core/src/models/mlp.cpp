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

#include "bookprosody/models/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bookprosody/error.hpp"
#include "bookprosody/util/text.hpp"

namespace bookprosody::models {

namespace {

struct Blocks {
  const ParamBlock& w1;
  const ParamBlock& b1;
  const ParamBlock& w2;
  const ParamBlock& b2;
  const ParamBlock& w3;
  const ParamBlock& b3;

  explicit Blocks(const ParamLayout& l)
      : w1(l[0]), b1(l[1]), w2(l[2]), b2(l[3]), w3(l[4]), b3(l[5]) {}
};

Eigen::MatrixXd relu(const Eigen::MatrixXd& m) { return m.cwiseMax(0.0); }

}  // namespace

ParamLayout mlp_layout(Eigen::Index input_dims, int hidden1, int hidden2) {
  ParamLayout layout;
  layout.add("w1", hidden1, input_dims);
  layout.add("b1", hidden1, 1);
  layout.add("w2", hidden2, hidden1);
  layout.add("b2", hidden2, 1);
  layout.add("w3", kTargets, hidden2);
  layout.add("b3", kTargets, 1);
  return layout;
}

double mlp_loss(const ParamLayout& layout, const Eigen::VectorXd& params,
                const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, double l2,
                Eigen::VectorXd* grad) {
  const Blocks b(layout);
  const auto w1 = view(params, b.w1);
  const auto w2 = view(params, b.w2);
  const auto w3 = view(params, b.w3);
  const double n = static_cast<double>(x.cols());

  const Eigen::MatrixXd z1 = (w1 * x).colwise() + view(params, b.b1).col(0);
  const Eigen::MatrixXd a1 = relu(z1);
  const Eigen::MatrixXd z2 = (w2 * a1).colwise() + view(params, b.b2).col(0);
  const Eigen::MatrixXd a2 = relu(z2);
  const Eigen::MatrixXd out = (w3 * a2).colwise() + view(params, b.b3).col(0);
  const Eigen::MatrixXd diff = out - y;
  const double count = static_cast<double>(diff.size());

  const double penalty = 0.5 * l2 / n * (w1.squaredNorm() + w2.squaredNorm() + w3.squaredNorm());
  const double loss = diff.squaredNorm() / count + penalty;
  if (grad == nullptr) return loss;

  grad->setZero(params.size());
  const Eigen::MatrixXd d_out = (2.0 / count) * diff;
  view(*grad, b.w3) = d_out * a2.transpose() + (l2 / n) * w3;
  view(*grad, b.b3) = d_out.rowwise().sum();
  const Eigen::MatrixXd d_z2 = (w3.transpose() * d_out).cwiseProduct(
      (z2.array() > 0.0).cast<double>().matrix());
  view(*grad, b.w2) = d_z2 * a1.transpose() + (l2 / n) * w2;
  view(*grad, b.b2) = d_z2.rowwise().sum();
  const Eigen::MatrixXd d_z1 = (w2.transpose() * d_z2).cwiseProduct(
      (z1.array() > 0.0).cast<double>().matrix());
  view(*grad, b.w1) = d_z1 * x.transpose() + (l2 / n) * w1;
  view(*grad, b.b1) = d_z1.rowwise().sum();
  return loss;
}

Eigen::MatrixXd mlp_forward(const ParamLayout& layout, const Eigen::VectorXd& params,
                            const Eigen::MatrixXd& rows) {
  const Blocks b(layout);
  const Eigen::MatrixXd a1 =
      relu((view(params, b.w1) * rows.transpose()).colwise() + view(params, b.b1).col(0));
  const Eigen::MatrixXd a2 =
      relu((view(params, b.w2) * a1).colwise() + view(params, b.b2).col(0));
  const Eigen::MatrixXd out = (view(params, b.w3) * a2).colwise() + view(params, b.b3).col(0);
  return out.transpose();
}

TrainedModel mlp_fit(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, const MlpConfig& config) {
  if (config.hidden1 < 1 || config.hidden2 < 1) throw ConfigError("MLP hidden sizes must be >= 1");
  if (config.batch_size < 1 || config.max_epochs < 1) {
    throw ConfigError("MLP batch_size and max_epochs must be >= 1");
  }
  if (x.rows() < 1 || x.rows() != y.rows() || y.cols() != kTargets) {
    throw DataError("MLP needs matching X and Y rows with 3 target columns");
  }
  if (!x.allFinite() || !y.allFinite()) throw DataError("non-finite value in MLP input");

  TrainedModel model;
  model.kind = ModelKind::kMlp;
  model.input_dims = x.cols();
  model.hidden = {config.hidden1, config.hidden2};
  model.seed = config.seed;
  model.layout = mlp_layout(x.cols(), config.hidden1, config.hidden2);
  model.params = Eigen::VectorXd::Zero(model.layout.size());
  if (config.standardize) model.input = Standardizer::fit(x);

  Rng rng(config.seed);
  for (std::size_t i : {0u, 2u, 4u}) he_normal(view(model.params, model.layout[i]), rng);

  // Samples as columns.
  const Eigen::MatrixXd xs = model.input.apply(x).transpose();
  const Eigen::MatrixXd ys = y.transpose();
  const Eigen::Index n = xs.cols();
  const Eigen::Index batch = std::min<Eigen::Index>(config.batch_size, n);

  Adam adam(model.layout.size(), config.adam);
  Eigen::VectorXd grad(model.layout.size());
  double best = std::numeric_limits<double>::infinity();
  int stale = 0;
  Eigen::MatrixXd bx(xs.rows(), batch);
  Eigen::MatrixXd by(kTargets, batch);
  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    const auto order = shuffled_indices(n, rng);
    double total = 0.0;
    for (Eigen::Index start = 0; start < n; start += batch) {
      const Eigen::Index m = std::min(batch, n - start);
      bx.resize(xs.rows(), m);
      by.resize(kTargets, m);
      for (Eigen::Index j = 0; j < m; ++j) {
        bx.col(j) = xs.col(order[static_cast<std::size_t>(start + j)]);
        by.col(j) = ys.col(order[static_cast<std::size_t>(start + j)]);
      }
      const double loss = mlp_loss(model.layout, model.params, bx, by, config.l2, &grad);
      if (!std::isfinite(loss) || !grad.allFinite()) throw TrainingDiverged(epoch);
      total += loss * static_cast<double>(m);
      adam.step(model.params, grad);
    }
    const double epoch_loss = total / static_cast<double>(n);
    if (!std::isfinite(epoch_loss)) throw TrainingDiverged(epoch);
    model.training_log.push_back({epoch, epoch_loss, std::nullopt});
    model.selected_epoch = epoch;
    if (config.n_iter_no_change < 1) continue;
    if (epoch_loss > best - config.tol) {
      if (++stale >= config.n_iter_no_change) break;
    } else {
      stale = 0;
    }
    best = std::min(best, epoch_loss);
  }

  model.metadata["init"] = "he_normal";
  model.metadata["optimizer"] = "adam";
  model.metadata["learning_rate"] = util::format_double(config.adam.learning_rate);
  model.metadata["batch_size"] = std::to_string(config.batch_size);
  model.metadata["l2"] = util::format_double(config.l2);
  return model;
}

}  // namespace bookprosody::models
