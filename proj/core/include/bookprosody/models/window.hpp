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

#ifndef BOOKPROSODY_MODELS_WINDOW_HPP_
#define BOOKPROSODY_MODELS_WINDOW_HPP_

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "bookprosody/models/trained_model.hpp"

namespace bookprosody::models {

/// Maps an L x D window whose first `valid` rows are real (the rest zero
/// padding) to `valid` x 3 predictions.
using WindowFn = std::function<Eigen::MatrixXd(const Eigen::MatrixXd& window, Eigen::Index valid)>;

struct WindowedPrediction {
  Eigen::MatrixXd mean;       // n x 3
  std::vector<int> coverage;  // windows covering each segment
};

/// Runs `fn` on every window of length `seq_len` (stride 1) and averages
/// each segment's predictions over the windows covering it. A chapter with
/// fewer than `seq_len` segments is scored as one zero-padded window.
/// Throws DataError for an empty chapter or seq_len < 1.
WindowedPrediction sliding_window_predict(const WindowFn& fn, const Eigen::MatrixXd& features,
                                          int seq_len);

/// Same, with the model's own window length.
WindowedPrediction sliding_window_predict(const TrainedModel& model,
                                          const Eigen::MatrixXd& features);

}  // namespace bookprosody::models

#endif  // BOOKPROSODY_MODELS_WINDOW_HPP_
