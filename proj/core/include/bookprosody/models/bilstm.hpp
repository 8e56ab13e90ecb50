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

#ifndef BOOKPROSODY_MODELS_BILSTM_HPP_
#define BOOKPROSODY_MODELS_BILSTM_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bookprosody/models/params.hpp"
#include "bookprosody/models/trained_model.hpp"

namespace bookprosody::models {

struct BilstmConfig {
  int units = 40;  // per direction
  int dense = 20;
  int seq_len = 3;
  int epochs = 30;
  int batch_size = 32;
  AdamConfig adam;
  /// Share of chapters, taken from the end of the list, held out for
  /// model selection.
  double val_fraction = 0.15;
  bool standardize = true;
  std::uint64_t seed = 0;
};

/// Segment features and targets of one chapter, in reading order.
struct ChapterSequence {
  std::string chapter_id;
  Eigen::MatrixXd features;  // n x D
  Eigen::MatrixXd targets;   // n x 3
  /// n x 3 weights (1 = use, 0 = ignore); empty means all ones.
  Eigen::MatrixXd mask;
};

/// A run of `seq_len` consecutive segments. Only the first `valid`
/// positions hold real segments; the rest is zero padding.
struct Window {
  std::size_t chapter = 0;
  Eigen::Index start = 0;
  Eigen::Index valid = 0;
};

/// Every start index with stride 1, in chapter then start order. Chapters
/// shorter than `seq_len` yield one padded window; empty chapters none.
std::vector<Window> make_windows(std::span<const ChapterSequence> chapters, int seq_len);

/// Time-major batch: entry t holds column b of every window.
struct SequenceBatch {
  std::vector<Eigen::MatrixXd> inputs;   // D x B
  std::vector<Eigen::MatrixXd> targets;  // 3 x B
  std::vector<Eigen::MatrixXd> masks;    // 3 x B
};

/// Layout: `fw_wx`, `fw_wh`, `fw_b`, `bw_wx`, `bw_wh`, `bw_b` (gate order
/// input, forget, cell, output), `dense_w`, `dense_b`, `out_w`, `out_b`.
ParamLayout bilstm_layout(Eigen::Index input_dims, int units, int dense);

/// Glorot-uniform weights, zero biases except forget-gate biases of 1.
Eigen::VectorXd bilstm_init(const ParamLayout& layout, int units, Rng& rng);

/// Masked mean squared error over all timesteps and outputs. Writes the
/// gradient into `grad` when non-null.
double bilstm_loss(const ParamLayout& layout, const Eigen::VectorXd& params, int units,
                   const SequenceBatch& batch, Eigen::VectorXd* grad);

/// Per-timestep outputs (3 x B each).
std::vector<Eigen::MatrixXd> bilstm_forward(const ParamLayout& layout,
                                            const Eigen::VectorXd& params, int units,
                                            const std::vector<Eigen::MatrixXd>& inputs);

/// Trains on windows of the given chapters with the last `val_fraction` of
/// chapters held out, keeping the weights of the epoch with the lowest
/// validation loss (training loss when nothing is held out). Throws
/// DataError with fewer than 10 windows in total.
TrainedModel bilstm_fit(std::span<const ChapterSequence> chapters, const BilstmConfig& config);

}  // namespace bookprosody::models

#endif  // BOOKPROSODY_MODELS_BILSTM_HPP_
