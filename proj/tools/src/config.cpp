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


#include "config.hpp"

#include <fstream>
#include <set>
#include <type_traits>

#include <nlohmann/json.hpp>

namespace bookprosody::cli {

namespace {

using nlohmann::json;

// Reads keys of one JSON object and rejects the ones nobody asked for.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ConfigError(label() + " must be an object");
  }

  template <typename T>
  void read(const char* key, T& out) {
    seen_.insert(key);
    const auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) return;
    if constexpr (std::is_same_v<T, bool>) {
      if (!it->is_boolean()) throw ConfigError(path(key) + " must be a boolean");
    } else if constexpr (std::is_integral_v<T>) {
      if (!it->is_number_integer()) throw ConfigError(path(key) + " must be an integer");
      if constexpr (std::is_unsigned_v<T>) {
        if (!it->is_number_unsigned() && it->template get<long long>() < 0) {
          throw ConfigError(path(key) + " must be non-negative");
        }
      }
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!it->is_number()) throw ConfigError(path(key) + " must be a number");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!it->is_string()) throw ConfigError(path(key) + " must be a string");
    } else if constexpr (std::is_same_v<T, std::vector<int>>) {
      if (!it->is_array()) throw ConfigError(path(key) + " must be an array of integers");
      for (const auto& v : *it) {
        if (!v.is_number_integer()) throw ConfigError(path(key) + " must be an array of integers");
      }
    }
    out = it->template get<T>();
  }

  void read_path(const char* key, std::filesystem::path& out, const std::filesystem::path& base) {
    std::string s;
    read(key, s);
    if (!s.empty()) out = base / s;
  }

  ObjectReader child(const char* key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    static const json empty = json::object();
    return ObjectReader(it == j_.end() || it->is_null() ? empty : *it, path(key));
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) throw ConfigError("unknown config key '" + path(key.c_str()) + "'");
    }
  }

 private:
  std::string label() const { return where_.empty() ? "config" : where_; }
  std::string path(const char* key) const { return where_.empty() ? key : where_ + "." + key; }

  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

PipelineConfig config_from_json(const json& j, const std::filesystem::path& base_dir) {
  PipelineConfig c;
  ObjectReader root(j, "");
  root.read_path("dataset_root", c.dataset_root, base_dir);
  root.read_path("manifest", c.manifest, base_dir);
  std::string output;
  root.read("output_dir", output);
  c.output_dir = base_dir / (output.empty() ? std::string("out") : output);
  root.read("seed", c.seed);
  root.read("jobs", c.jobs);

  auto split = root.child("split");
  split.read("train_ratio", c.train_ratio);
  split.finish();

  auto pitch = root.child("pitch");
  pitch.read("floor_hz", c.pitch.floor_hz);
  pitch.read("ceil_hz", c.pitch.ceil_hz);
  pitch.read("threshold", c.pitch.threshold);
  pitch.read("silence_dbfs", c.pitch.silence_dbfs);
  pitch.read("window_s", c.pitch.window_s);
  pitch.finish();

  auto extract = root.child("extract");
  extract.read("dump_tracks", c.dump_tracks);
  extract.finish();

  auto features = root.child("features");
  features.read("kind", c.features.kind);
  auto tfidf = features.child("tfidf");
  tfidf.read("min_df", c.features.tfidf.min_df);
  tfidf.read("max_features", c.features.tfidf.max_features);
  tfidf.finish();
  features.read_path("word_vectors_path", c.features.word_vectors_path, base_dir);
  auto character = features.child("character");
  character.read("enabled", c.features.character.enabled);
  character.read("pca_dims", c.features.character.pca_dims);
  character.finish();
  features.finish();

  auto model = root.child("model");
  model.read("kind", c.model.kind);
  model.read("ridge", c.model.ridge);
  model.read("hidden", c.model.hidden);
  model.read("max_epochs", c.model.max_epochs);
  model.read("seq_len", c.model.seq_len);
  model.read("epochs", c.model.epochs);
  model.read("lstm_units", c.model.lstm_units);
  model.read("dense_units", c.model.dense_units);
  model.read("val_fraction", c.model.val_fraction);
  model.read("batch_size", c.model.batch_size);
  model.read("learning_rate", c.model.learning_rate);
  model.read("exclude_imputed", c.model.exclude_imputed);
  model.finish();

  auto ssml = root.child("ssml");
  ssml.read("default_pitch_mean_hz", c.ssml.default_pitch_mean_hz);
  ssml.read("default_pitch_std_hz", c.ssml.default_pitch_std_hz);
  ssml.finish();

  auto eval = root.child("eval");
  eval.read("subset", c.eval.subset);
  eval.read("min_gender_words", c.eval.min_gender_words);
  eval.finish();

  root.finish();
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return config_from_json(j, std::filesystem::absolute(path).parent_path());
}

json to_json(const PipelineConfig& c) {
  return {{"dataset_root", c.dataset_root.string()},
          {"manifest", c.manifest.string()},
          {"output_dir", c.output_dir.string()},
          {"seed", c.seed},
          {"jobs", c.jobs},
          {"split", {{"train_ratio", c.train_ratio}}},
          {"pitch",
           {{"floor_hz", c.pitch.floor_hz},
            {"ceil_hz", c.pitch.ceil_hz},
            {"threshold", c.pitch.threshold},
            {"silence_dbfs", c.pitch.silence_dbfs},
            {"window_s", c.pitch.window_s}}},
          {"extract", {{"dump_tracks", c.dump_tracks}}},
          {"features",
           {{"kind", c.features.kind},
            {"tfidf",
             {{"min_df", c.features.tfidf.min_df},
              {"max_features", c.features.tfidf.max_features}}},
            {"word_vectors_path", c.features.word_vectors_path.string()},
            {"character",
             {{"enabled", c.features.character.enabled},
              {"pca_dims", c.features.character.pca_dims}}}}},
          {"model",
           {{"kind", c.model.kind},
            {"ridge", c.model.ridge},
            {"hidden", c.model.hidden},
            {"max_epochs", c.model.max_epochs},
            {"seq_len", c.model.seq_len},
            {"epochs", c.model.epochs},
            {"lstm_units", c.model.lstm_units},
            {"dense_units", c.model.dense_units},
            {"val_fraction", c.model.val_fraction},
            {"batch_size", c.model.batch_size},
            {"learning_rate", c.model.learning_rate},
            {"exclude_imputed", c.model.exclude_imputed}}},
          {"ssml",
           {{"default_pitch_mean_hz", c.ssml.default_pitch_mean_hz},
            {"default_pitch_std_hz", c.ssml.default_pitch_std_hz}}},
          {"eval",
           {{"subset", c.eval.subset}, {"min_gender_words", c.eval.min_gender_words}}}};
}

void validate(const PipelineConfig& c) {
  require(c.dataset_root.empty() != c.manifest.empty(),
          "set exactly one of dataset_root and manifest");
  if (!c.dataset_root.empty()) {
    require(std::filesystem::is_directory(c.dataset_root),
            "dataset_root " + c.dataset_root.string() + " is not a directory");
  }
  if (!c.manifest.empty()) {
    require(std::filesystem::is_regular_file(c.manifest),
            "manifest " + c.manifest.string() + " does not exist");
  }
  require(c.jobs >= 0, "jobs must be >= 0");
  require(c.train_ratio > 0.0 && c.train_ratio < 1.0, "split.train_ratio must lie in (0, 1)");
  require(c.pitch.floor_hz > 0.0 && c.pitch.ceil_hz > c.pitch.floor_hz,
          "pitch needs 0 < floor_hz < ceil_hz");
  require(c.pitch.threshold > 0.0 && c.pitch.threshold < 1.0, "pitch.threshold must lie in (0, 1)");
  require(c.pitch.window_s > 0.0, "pitch.window_s must be positive");

  const auto& f = c.features;
  require(f.kind == "tfidf" || f.kind == "word_vectors" || f.kind == "external",
          "features.kind must be tfidf, word_vectors or external");
  require(f.tfidf.min_df >= 1, "features.tfidf.min_df must be >= 1");
  if (f.kind == "word_vectors") {
    require(!f.word_vectors_path.empty(), "features.word_vectors_path is required for word_vectors");
    require(std::filesystem::is_regular_file(f.word_vectors_path),
            "word vector file " + f.word_vectors_path.string() + " does not exist");
  }
  require(f.character.pca_dims >= 1, "features.character.pca_dims must be >= 1");

  const auto& m = c.model;
  require(m.kind == "linreg" || m.kind == "mlp" || m.kind == "bilstm",
          "model.kind must be linreg, mlp or bilstm");
  require(m.ridge >= 0.0, "model.ridge must be >= 0");
  require(m.hidden.size() == 2 && m.hidden[0] >= 1 && m.hidden[1] >= 1,
          "model.hidden must hold two positive sizes");
  require(m.max_epochs >= 1 && m.epochs >= 1, "model epochs must be >= 1");
  require(m.seq_len >= 1, "model.seq_len must be >= 1");
  require(m.lstm_units >= 1 && m.dense_units >= 1, "model unit counts must be >= 1");
  require(m.val_fraction >= 0.0 && m.val_fraction < 1.0, "model.val_fraction must lie in [0, 1)");
  require(m.batch_size >= 1, "model.batch_size must be >= 1");
  require(m.learning_rate > 0.0, "model.learning_rate must be positive");

  require(c.ssml.default_pitch_mean_hz > 0.0 && c.ssml.default_pitch_std_hz > 0.0,
          "ssml default pitch statistics must be positive");
  require(c.eval.subset == "all" || c.eval.subset == "dialogue",
          "eval.subset must be all or dialogue");
  require(c.eval.min_gender_words >= 0, "eval.min_gender_words must be >= 0");
}

}  // namespace bookprosody::cli
