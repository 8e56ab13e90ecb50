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


#ifndef BOOKPROSODY_TOOLS_CONFIG_HPP_
#define BOOKPROSODY_TOOLS_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bookprosody/dsp/pitch.hpp"
#include "bookprosody/error.hpp"

namespace bookprosody::cli {

/// A subcommand needs an artifact that another subcommand produces.
class MissingArtifact : public Error {
 public:
  using Error::Error;
};

struct TfidfSettings {
  std::size_t min_df = 2;
  std::size_t max_features = 0;
};

struct CharacterSettings {
  bool enabled = false;
  long pca_dims = 8;
};

struct FeatureSettings {
  /// tfidf, word_vectors or external.
  std::string kind = "tfidf";
  TfidfSettings tfidf;
  std::filesystem::path word_vectors_path;
  CharacterSettings character;
};

struct ModelSettings {
  /// linreg, mlp or bilstm.
  std::string kind = "bilstm";
  double ridge = 1e-8;
  std::vector<int> hidden{10, 10};
  int max_epochs = 200;
  int seq_len = 3;
  int epochs = 30;
  int lstm_units = 40;
  int dense_units = 20;
  double val_fraction = 0.15;
  int batch_size = 32;
  double learning_rate = 1e-3;
  bool exclude_imputed = true;
};

struct SsmlSettings {
  double default_pitch_mean_hz = 200.0;
  double default_pitch_std_hz = 30.0;
};

struct EvalSettings {
  /// all or dialogue.
  std::string subset = "all";
  long min_gender_words = 100;
};

struct PipelineConfig {
  /// Exactly one of the two is set.
  std::filesystem::path dataset_root;
  std::filesystem::path manifest;
  std::filesystem::path output_dir = "out";
  std::uint64_t seed = 0;
  /// 0 uses every logical core.
  int jobs = 0;
  double train_ratio = 0.75;
  dsp::PitchParams pitch;
  bool dump_tracks = false;
  FeatureSettings features;
  ModelSettings model;
  SsmlSettings ssml;
  EvalSettings eval;
};

/// Parses and validates a config document. Unknown keys, wrong types and
/// out-of-range values throw ConfigError. Relative paths resolve against
/// `base_dir`.
PipelineConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);

PipelineConfig load_config(const std::filesystem::path& path);

/// Every setting, defaults included.
nlohmann::json to_json(const PipelineConfig& config);

/// Checks ranges and that referenced inputs exist.
void validate(const PipelineConfig& config);

}  // namespace bookprosody::cli

#endif  // BOOKPROSODY_TOOLS_CONFIG_HPP_
