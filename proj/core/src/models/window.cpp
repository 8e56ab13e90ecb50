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

#include "bookprosody/models/window.hpp"

#include <string>

#include "bookprosody/error.hpp"

namespace bookprosody::models {

WindowedPrediction sliding_window_predict(const WindowFn& fn, const Eigen::MatrixXd& features,
                                          int seq_len) {
  if (seq_len < 1) throw DataError("window length must be >= 1");
  const Eigen::Index n = features.rows();
  if (n == 0) throw DataError("cannot predict an empty chapter");

  WindowedPrediction out;
  out.mean = Eigen::MatrixXd::Zero(n, kTargets);
  out.coverage.assign(static_cast<std::size_t>(n), 0);

  const Eigen::Index len = seq_len;
  Eigen::MatrixXd window = Eigen::MatrixXd::Zero(len, features.cols());
  auto run = [&](Eigen::Index start, Eigen::Index valid) {
    window.setZero();
    window.topRows(valid) = features.middleRows(start, valid);
    const Eigen::MatrixXd pred = fn(window, valid);
    if (pred.rows() != valid || pred.cols() != kTargets) {
      throw DimError("window function returned " + std::to_string(pred.rows()) + "x" +
                     std::to_string(pred.cols()) + ", expected " + std::to_string(valid) + "x3");
    }
    // Running mean, so that identical predictions average to themselves exactly.
    for (Eigen::Index t = 0; t < valid; ++t) {
      const double k = ++out.coverage[static_cast<std::size_t>(start + t)];
      out.mean.row(start + t) += (pred.row(t) - out.mean.row(start + t)) / k;
    }
  };

  if (n < len) {
    run(0, n);
  } else {
    for (Eigen::Index s = 0; s + len <= n; ++s) run(s, len);
  }
  return out;
}

WindowedPrediction sliding_window_predict(const TrainedModel& model,
                                          const Eigen::MatrixXd& features) {
  return sliding_window_predict(
      [&model](const Eigen::MatrixXd& window, Eigen::Index valid) {
        return model.predict_window(window, valid);
      },
      features, model.seq_len);
}

}  // namespace bookprosody::models
