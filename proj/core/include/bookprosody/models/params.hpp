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

#ifndef BOOKPROSODY_MODELS_PARAMS_HPP_
#define BOOKPROSODY_MODELS_PARAMS_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace bookprosody::models {

using Rng = std::mt19937_64;

/// A named matrix stored column-major inside a flat parameter vector.
struct ParamBlock {
  std::string name;
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  Eigen::Index offset = 0;

  Eigen::Index size() const noexcept { return rows * cols; }
};

/// Ordered set of blocks. Every model keeps all of its weights in one
/// Eigen::VectorXd laid out by a ParamLayout, so optimisers, gradient checks
/// and serialisation work on plain vectors.
class ParamLayout {
 public:
  /// Returns the block index.
  std::size_t add(std::string name, Eigen::Index rows, Eigen::Index cols);

  Eigen::Index size() const noexcept { return size_; }
  const std::vector<ParamBlock>& blocks() const noexcept { return blocks_; }
  const ParamBlock& operator[](std::size_t i) const { return blocks_.at(i); }
  /// Throws SchemaError for an unknown name.
  const ParamBlock& at(std::string_view name) const;

  bool operator==(const ParamLayout& o) const;

 private:
  std::vector<ParamBlock> blocks_;
  Eigen::Index size_ = 0;
};

using MatrixMap = Eigen::Map<Eigen::MatrixXd>;
using ConstMatrixMap = Eigen::Map<const Eigen::MatrixXd>;

MatrixMap view(Eigen::VectorXd& params, const ParamBlock& block);
ConstMatrixMap view(const Eigen::VectorXd& params, const ParamBlock& block);

/// U(-a, a) with a = sqrt(6 / (fan_in + fan_out)).
void glorot_uniform(MatrixMap m, Rng& rng);
/// N(0, 2 / fan_in).
void he_normal(MatrixMap m, Rng& rng);

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

class Adam {
 public:
  Adam(Eigen::Index size, AdamConfig config);

  void step(Eigen::VectorXd& params, const Eigen::VectorXd& grad);
  long steps() const noexcept { return t_; }

 private:
  AdamConfig config_;
  Eigen::VectorXd m_;
  Eigen::VectorXd v_;
  long t_ = 0;
};

/// Fisher-Yates permutation of 0..n-1.
std::vector<Eigen::Index> shuffled_indices(Eigen::Index n, Rng& rng);

/// Column means and standard deviations (population). Zero spreads become 1.
struct Standardizer {
  Eigen::VectorXd mean;
  Eigen::VectorXd scale;

  static Standardizer fit(const Eigen::MatrixXd& rows);
  bool empty() const noexcept { return mean.size() == 0; }
  Eigen::MatrixXd apply(const Eigen::MatrixXd& rows) const;
};

}  // namespace bookprosody::models

#endif  // BOOKPROSODY_MODELS_PARAMS_HPP_
