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

#include "bookprosody/models/params.hpp"

#include <cmath>
#include <numeric>

#include "bookprosody/error.hpp"

namespace bookprosody::models {

std::size_t ParamLayout::add(std::string name, Eigen::Index rows, Eigen::Index cols) {
  blocks_.push_back(ParamBlock{std::move(name), rows, cols, size_});
  size_ += rows * cols;
  return blocks_.size() - 1;
}

const ParamBlock& ParamLayout::at(std::string_view name) const {
  for (const auto& b : blocks_) {
    if (b.name == name) return b;
  }
  throw SchemaError("unknown parameter block '" + std::string(name) + "'");
}

bool ParamLayout::operator==(const ParamLayout& o) const {
  if (blocks_.size() != o.blocks_.size()) return false;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const auto& a = blocks_[i];
    const auto& b = o.blocks_[i];
    if (a.name != b.name || a.rows != b.rows || a.cols != b.cols) return false;
  }
  return true;
}

MatrixMap view(Eigen::VectorXd& params, const ParamBlock& block) {
  return MatrixMap(params.data() + block.offset, block.rows, block.cols);
}

ConstMatrixMap view(const Eigen::VectorXd& params, const ParamBlock& block) {
  return ConstMatrixMap(params.data() + block.offset, block.rows, block.cols);
}

void glorot_uniform(MatrixMap m, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(m.rows() + m.cols()));
  std::uniform_real_distribution<double> dist(-limit, limit);
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, c) = dist(rng);
  }
}

void he_normal(MatrixMap m, Rng& rng) {
  std::normal_distribution<double> dist(0.0, std::sqrt(2.0 / static_cast<double>(m.cols())));
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, c) = dist(rng);
  }
}

Adam::Adam(Eigen::Index size, AdamConfig config)
    : config_(config), m_(Eigen::VectorXd::Zero(size)), v_(Eigen::VectorXd::Zero(size)) {}

void Adam::step(Eigen::VectorXd& params, const Eigen::VectorXd& grad) {
  ++t_;
  m_ = config_.beta1 * m_ + (1.0 - config_.beta1) * grad;
  v_ = config_.beta2 * v_ + (1.0 - config_.beta2) * grad.cwiseAbs2();
  const double c1 = 1.0 - std::pow(config_.beta1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(config_.beta2, static_cast<double>(t_));
  params.array() -= config_.learning_rate * (m_.array() / c1) /
                    ((v_.array() / c2).sqrt() + config_.epsilon);
}

std::vector<Eigen::Index> shuffled_indices(Eigen::Index n, Rng& rng) {
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  for (std::size_t i = idx.size(); i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(idx[i - 1], idx[pick(rng)]);
  }
  return idx;
}

Standardizer Standardizer::fit(const Eigen::MatrixXd& rows) {
  Standardizer s;
  s.mean = rows.colwise().mean().transpose();
  s.scale.resize(rows.cols());
  for (Eigen::Index c = 0; c < rows.cols(); ++c) {
    const double var = (rows.col(c).array() - s.mean(c)).square().mean();
    const double sd = std::sqrt(var);
    s.scale(c) = sd > 1e-12 ? sd : 1.0;
  }
  return s;
}

Eigen::MatrixXd Standardizer::apply(const Eigen::MatrixXd& rows) const {
  if (empty()) return rows;
  if (rows.cols() != mean.size()) {
    throw DimError("expected " + std::to_string(mean.size()) + " feature columns, got " +
                   std::to_string(rows.cols()));
  }
  return (rows.rowwise() - mean.transpose()).array().rowwise() / scale.transpose().array();
}

}  // namespace bookprosody::models
