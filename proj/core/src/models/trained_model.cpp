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

#include "bookprosody/models/trained_model.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "bookprosody/error.hpp"
#include "bookprosody/models/bilstm.hpp"
#include "bookprosody/models/linreg.hpp"
#include "bookprosody/models/mlp.hpp"

namespace bookprosody::models {

namespace {

using nlohmann::json;

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

Eigen::VectorXd from_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

ParamLayout expected_layout(const TrainedModel& m) {
  switch (m.kind) {
    case ModelKind::kLinreg:
      return linreg_layout(m.input_dims);
    case ModelKind::kMlp:
      if (m.hidden.size() != 2) throw DataError("MLP needs two hidden sizes");
      return mlp_layout(m.input_dims, m.hidden[0], m.hidden[1]);
    case ModelKind::kBilstm:
      if (m.hidden.size() != 2) throw DataError("BiLSTM needs unit and dense sizes");
      return bilstm_layout(m.input_dims, m.hidden[0], m.hidden[1]);
  }
  throw DataError("unknown model kind");
}

}  // namespace

std::string_view model_kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::kLinreg:
      return "linreg";
    case ModelKind::kMlp:
      return "mlp";
    case ModelKind::kBilstm:
      return "bilstm";
  }
  return "linreg";
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "linreg") return ModelKind::kLinreg;
  if (name == "mlp") return ModelKind::kMlp;
  if (name == "bilstm") return ModelKind::kBilstm;
  throw ConfigError("unknown model kind '" + std::string(name) +
                    "' (expected linreg, mlp or bilstm)");
}

Eigen::MatrixXd TrainedModel::predict_window(const Eigen::MatrixXd& window,
                                             Eigen::Index valid) const {
  if (window.cols() != input_dims) {
    throw DimError("model expects " + std::to_string(input_dims) + " features, got " +
                   std::to_string(window.cols()));
  }
  if (valid < 0 || valid > window.rows()) throw DimError("invalid window length");
  const Eigen::MatrixXd rows = input.apply(window.topRows(valid));
  switch (kind) {
    case ModelKind::kLinreg:
      return linreg_forward(*this, rows);
    case ModelKind::kMlp:
      return mlp_forward(layout, params, rows);
    case ModelKind::kBilstm: {
      if (window.rows() != seq_len) {
        throw DimError("BiLSTM window must have " + std::to_string(seq_len) + " rows");
      }
      std::vector<Eigen::MatrixXd> inputs;
      for (Eigen::Index t = 0; t < seq_len; ++t) {
        inputs.push_back(t < valid ? Eigen::MatrixXd(rows.row(t).transpose())
                                   : Eigen::MatrixXd::Zero(input_dims, 1));
      }
      const auto out = bilstm_forward(layout, params, hidden[0], inputs);
      Eigen::MatrixXd result(valid, kTargets);
      for (Eigen::Index t = 0; t < valid; ++t) {
        result.row(t) = out[static_cast<std::size_t>(t)].col(0).transpose();
      }
      return result;
    }
  }
  throw DataError("unknown model kind");
}

void TrainedModel::validate() const {
  if (input_dims < 1) throw DataError("model has no input dimensions");
  if (!(layout == expected_layout(*this))) throw DataError("weight layout does not match kind");
  if (params.size() != layout.size()) throw DataError("parameter count does not match layout");
  if (!params.allFinite()) throw DataError("model weights are not finite");
  if (!input.empty() && (input.mean.size() != input_dims || input.scale.size() != input_dims)) {
    throw DataError("input standardisation has the wrong size");
  }
  if (seq_len < 1) throw DataError("seq_len must be >= 1");
}

nlohmann::json to_json(const TrainedModel& model) {
  json weights = json::array();
  for (const auto& block : model.layout.blocks()) {
    const auto m = view(model.params, block);
    weights.push_back({{"name", block.name},
                       {"rows", block.rows},
                       {"cols", block.cols},
                       {"values", std::vector<double>(m.data(), m.data() + m.size())}});
  }
  json log = json::array();
  for (const auto& e : model.training_log) {
    log.push_back({{"epoch", e.epoch},
                   {"train_loss", e.train_loss},
                   {"val_loss", e.val_loss ? json(*e.val_loss) : json(nullptr)}});
  }
  json input = nullptr;
  if (!model.input.empty()) {
    input = {{"mean", to_vector(model.input.mean)}, {"scale", to_vector(model.input.scale)}};
  }
  return {{"format", "bookprosody-model"},
          {"version", 1},
          {"kind", model_kind_name(model.kind)},
          {"input_dims", model.input_dims},
          {"hidden", model.hidden},
          {"seq_len", model.seq_len},
          {"seed", model.seed},
          {"selected_epoch", model.selected_epoch},
          {"metadata", model.metadata},
          {"input_standardization", std::move(input)},
          {"weights", std::move(weights)},
          {"training_log", std::move(log)}};
}

TrainedModel model_from_json(const nlohmann::json& j) {
  try {
    TrainedModel model;
    if (j.value("format", std::string{}) != "bookprosody-model") {
      throw SchemaError("not a bookprosody model checkpoint");
    }
    model.kind = parse_model_kind(j.at("kind").get<std::string>());
    model.input_dims = j.at("input_dims").get<Eigen::Index>();
    model.hidden = j.at("hidden").get<std::vector<int>>();
    model.seq_len = j.at("seq_len").get<int>();
    model.seed = j.at("seed").get<std::uint64_t>();
    model.selected_epoch = j.value("selected_epoch", 0);
    model.metadata = j.value("metadata", std::map<std::string, std::string>{});
    const json& input = j.at("input_standardization");
    if (!input.is_null()) {
      model.input.mean = from_vector(input.at("mean").get<std::vector<double>>());
      model.input.scale = from_vector(input.at("scale").get<std::vector<double>>());
    }
    for (const json& w : j.at("weights")) {
      model.layout.add(w.at("name").get<std::string>(), w.at("rows").get<Eigen::Index>(),
                       w.at("cols").get<Eigen::Index>());
    }
    model.params.resize(model.layout.size());
    for (std::size_t i = 0; i < model.layout.blocks().size(); ++i) {
      const auto values = j.at("weights")[i].at("values").get<std::vector<double>>();
      const ParamBlock& block = model.layout[i];
      if (static_cast<Eigen::Index>(values.size()) != block.size()) {
        throw SchemaError("weight block '" + block.name + "' has the wrong number of values");
      }
      model.params.segment(block.offset, block.size()) = from_vector(values);
    }
    for (const json& e : j.at("training_log")) {
      EpochLog log;
      log.epoch = e.at("epoch").get<int>();
      log.train_loss = e.at("train_loss").get<double>();
      if (!e.at("val_loss").is_null()) log.val_loss = e.at("val_loss").get<double>();
      model.training_log.push_back(log);
    }
    model.validate();
    return model;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed model checkpoint: ") + e.what());
  } catch (const DataError& e) {
    throw SchemaError(std::string("inconsistent model checkpoint: ") + e.what());
  } catch (const ConfigError& e) {
    throw SchemaError(std::string("model checkpoint: ") + e.what());
  }
}

void save_model(const std::filesystem::path& path, const TrainedModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << to_json(model).dump(1) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

TrainedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw SchemaError("model checkpoint " + path.string() + " is not valid JSON: " + e.what());
  }
  return model_from_json(j);
}

}  // namespace bookprosody::models
