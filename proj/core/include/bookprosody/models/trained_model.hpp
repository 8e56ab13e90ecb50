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

#ifndef BOOKPROSODY_MODELS_TRAINED_MODEL_HPP_
#define BOOKPROSODY_MODELS_TRAINED_MODEL_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "bookprosody/models/params.hpp"

namespace bookprosody::models {

/// Number of jointly predicted attributes (pitch, volume, rate).
inline constexpr Eigen::Index kTargets = 3;

enum class ModelKind { kLinreg, kMlp, kBilstm };

std::string_view model_kind_name(ModelKind k);
/// Throws ConfigError.
ModelKind parse_model_kind(std::string_view name);

struct EpochLog {
  int epoch = 0;  // 1-based
  double train_loss = 0.0;
  std::optional<double> val_loss;
};

struct TrainedModel {
  ModelKind kind = ModelKind::kLinreg;
  Eigen::Index input_dims = 0;
  /// mlp: (h1, h2); bilstm: (units per direction, dense units); linreg: empty.
  std::vector<int> hidden;
  /// Window length for bilstm, 1 otherwise.
  int seq_len = 1;
  std::uint64_t seed = 0;
  ParamLayout layout;
  Eigen::VectorXd params;
  /// Input standardisation; empty for none.
  Standardizer input;
  std::vector<EpochLog> training_log;
  /// Epoch whose weights were kept (0 when not trained iteratively).
  int selected_epoch = 0;
  /// Optimiser and initialisation choices, recorded for provenance.
  std::map<std::string, std::string> metadata;

  /// Predictions for the first `valid` rows of a window of seq_len rows
  /// (rows beyond `valid` are padding and ignored). Returns valid x 3.
  Eigen::MatrixXd predict_window(const Eigen::MatrixXd& window, Eigen::Index valid) const;

  /// Throws DataError when shapes or values are inconsistent.
  void validate() const;
};

nlohmann::json to_json(const TrainedModel& model);
/// Throws SchemaError.
TrainedModel model_from_json(const nlohmann::json& j);

void save_model(const std::filesystem::path& path, const TrainedModel& model);
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace bookprosody::models

#endif  // BOOKPROSODY_MODELS_TRAINED_MODEL_HPP_
