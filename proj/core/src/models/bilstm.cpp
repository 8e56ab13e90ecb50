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

#include "bookprosody/models/bilstm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bookprosody/error.hpp"
#include "bookprosody/util/text.hpp"

namespace bookprosody::models {

namespace {

enum Block : std::size_t {
  kFwWx, kFwWh, kFwB, kBwWx, kBwWh, kBwB, kDenseW, kDenseB, kOutW, kOutB
};

Eigen::MatrixXd sigmoid(const Eigen::MatrixXd& z) {
  return (1.0 + (-z.array()).exp()).inverse().matrix();
}

struct StepCache {
  Eigen::MatrixXd i, f, g, o, c, tc, h, h_prev, c_prev;
};

struct Direction {
  std::size_t wx, wh, b;
  bool reverse;
};

constexpr Direction kForward{kFwWx, kFwWh, kFwB, false};
constexpr Direction kBackward{kBwWx, kBwWh, kBwB, true};

std::vector<StepCache> run_lstm(const ParamLayout& layout, const Eigen::VectorXd& params,
                                Eigen::Index units, const Direction& dir,
                                const std::vector<Eigen::MatrixXd>& inputs) {
  const auto wx = view(params, layout[dir.wx]);
  const auto wh = view(params, layout[dir.wh]);
  const auto bias = view(params, layout[dir.b]).col(0);
  const std::size_t steps = inputs.size();
  const Eigen::Index batch = inputs.front().cols();
  const Eigen::Index h = units;

  std::vector<StepCache> cache(steps);
  Eigen::MatrixXd hidden = Eigen::MatrixXd::Zero(h, batch);
  Eigen::MatrixXd cell = Eigen::MatrixXd::Zero(h, batch);
  for (std::size_t k = 0; k < steps; ++k) {
    const std::size_t t = dir.reverse ? steps - 1 - k : k;
    Eigen::MatrixXd z = wx * inputs[t] + wh * hidden;
    z.colwise() += bias;
    StepCache& s = cache[t];
    s.i = sigmoid(z.topRows(h));
    s.f = sigmoid(z.middleRows(h, h));
    s.g = z.middleRows(2 * h, h).array().tanh().matrix();
    s.o = sigmoid(z.bottomRows(h));
    s.h_prev = hidden;
    s.c_prev = cell;
    cell = s.f.cwiseProduct(cell) + s.i.cwiseProduct(s.g);
    s.c = cell;
    s.tc = cell.array().tanh().matrix();
    hidden = s.o.cwiseProduct(s.tc);
    s.h = hidden;
  }
  return cache;
}

void backprop_lstm(const ParamLayout& layout, const Eigen::VectorXd& params, Eigen::Index units,
                   const Direction& dir, const std::vector<Eigen::MatrixXd>& inputs,
                   const std::vector<StepCache>& cache,
                   const std::vector<Eigen::MatrixXd>& dh_out, Eigen::VectorXd& grad) {
  const auto wh = view(params, layout[dir.wh]);
  auto g_wx = view(grad, layout[dir.wx]);
  auto g_wh = view(grad, layout[dir.wh]);
  auto g_b = view(grad, layout[dir.b]);
  const std::size_t steps = inputs.size();
  const Eigen::Index h = units;
  const Eigen::Index batch = inputs.front().cols();

  Eigen::MatrixXd dh_next = Eigen::MatrixXd::Zero(h, batch);
  Eigen::MatrixXd dc_next = Eigen::MatrixXd::Zero(h, batch);
  Eigen::MatrixXd dz(4 * h, batch);
  for (std::size_t k = steps; k-- > 0;) {
    const std::size_t t = dir.reverse ? steps - 1 - k : k;
    const StepCache& s = cache[t];
    const Eigen::ArrayXXd dh = (dh_out[t] + dh_next).array();
    const Eigen::ArrayXXd dc =
        dc_next.array() + dh * s.o.array() * (1.0 - s.tc.array().square());
    dz.topRows(h) = (dc * s.g.array() * s.i.array() * (1.0 - s.i.array())).matrix();
    dz.middleRows(h, h) = (dc * s.c_prev.array() * s.f.array() * (1.0 - s.f.array())).matrix();
    dz.middleRows(2 * h, h) = (dc * s.i.array() * (1.0 - s.g.array().square())).matrix();
    dz.bottomRows(h) = (dh * s.tc.array() * s.o.array() * (1.0 - s.o.array())).matrix();
    g_wx.noalias() += dz * inputs[t].transpose();
    g_wh.noalias() += dz * s.h_prev.transpose();
    g_b.col(0) += dz.rowwise().sum();
    dh_next.noalias() = wh.transpose() * dz;
    dc_next = (dc * s.f.array()).matrix();
  }
}

struct LossParts {
  double sum = 0.0;     // masked squared error
  double weight = 0.0;  // mask total
};

LossParts loss_parts(const ParamLayout& layout, const Eigen::VectorXd& params, int units,
                     const SequenceBatch& batch, Eigen::VectorXd* grad) {
  const std::size_t steps = batch.inputs.size();
  const auto fw = run_lstm(layout, params, units, kForward, batch.inputs);
  const auto bw = run_lstm(layout, params, units, kBackward, batch.inputs);
  const auto dense_w = view(params, layout[kDenseW]);
  const auto dense_b = view(params, layout[kDenseB]).col(0);
  const auto out_w = view(params, layout[kOutW]);
  const auto out_b = view(params, layout[kOutB]).col(0);
  const Eigen::Index h = units;
  const Eigen::Index b = batch.inputs.front().cols();

  LossParts parts;
  std::vector<Eigen::MatrixXd> concat(steps), act(steps), resid(steps);
  for (std::size_t t = 0; t < steps; ++t) {
    concat[t].resize(2 * h, b);
    concat[t].topRows(h) = fw[t].h;
    concat[t].bottomRows(h) = bw[t].h;
    Eigen::MatrixXd za = dense_w * concat[t];
    za.colwise() += dense_b;
    act[t] = za.array().tanh().matrix();
    Eigen::MatrixXd out = out_w * act[t];
    out.colwise() += out_b;
    resid[t] = out - batch.targets[t];
    parts.sum += (resid[t].array().square() * batch.masks[t].array()).sum();
    parts.weight += batch.masks[t].sum();
  }
  if (grad == nullptr) return parts;

  grad->setZero(params.size());
  if (parts.weight <= 0.0) return parts;
  auto g_dense_w = view(*grad, layout[kDenseW]);
  auto g_dense_b = view(*grad, layout[kDenseB]);
  auto g_out_w = view(*grad, layout[kOutW]);
  auto g_out_b = view(*grad, layout[kOutB]);
  std::vector<Eigen::MatrixXd> dh_fw(steps), dh_bw(steps);
  for (std::size_t t = 0; t < steps; ++t) {
    const Eigen::MatrixXd d_out = (2.0 / parts.weight) * resid[t].cwiseProduct(batch.masks[t]);
    g_out_w.noalias() += d_out * act[t].transpose();
    g_out_b.col(0) += d_out.rowwise().sum();
    const Eigen::MatrixXd d_za =
        (out_w.transpose() * d_out).cwiseProduct((1.0 - act[t].array().square()).matrix());
    g_dense_w.noalias() += d_za * concat[t].transpose();
    g_dense_b.col(0) += d_za.rowwise().sum();
    const Eigen::MatrixXd d_concat = dense_w.transpose() * d_za;
    dh_fw[t] = d_concat.topRows(h);
    dh_bw[t] = d_concat.bottomRows(h);
  }
  backprop_lstm(layout, params, units, kForward, batch.inputs, fw, dh_fw, *grad);
  backprop_lstm(layout, params, units, kBackward, batch.inputs, bw, dh_bw, *grad);
  return parts;
}

SequenceBatch gather(std::span<const ChapterSequence> chapters,
                     const std::vector<Eigen::MatrixXd>& standardized,
                     std::span<const Window> windows, int seq_len) {
  const Eigen::Index d = standardized.front().cols();
  const auto b = static_cast<Eigen::Index>(windows.size());
  SequenceBatch batch;
  for (int t = 0; t < seq_len; ++t) {
    batch.inputs.push_back(Eigen::MatrixXd::Zero(d, b));
    batch.targets.push_back(Eigen::MatrixXd::Zero(kTargets, b));
    batch.masks.push_back(Eigen::MatrixXd::Zero(kTargets, b));
  }
  for (Eigen::Index j = 0; j < b; ++j) {
    const Window& w = windows[static_cast<std::size_t>(j)];
    const ChapterSequence& ch = chapters[w.chapter];
    for (Eigen::Index t = 0; t < w.valid; ++t) {
      const Eigen::Index row = w.start + t;
      const auto ts = static_cast<std::size_t>(t);
      batch.inputs[ts].col(j) = standardized[w.chapter].row(row).transpose();
      batch.targets[ts].col(j) = ch.targets.row(row).transpose();
      if (ch.mask.size() == 0) {
        batch.masks[ts].col(j).setOnes();
      } else {
        batch.masks[ts].col(j) = ch.mask.row(row).transpose();
      }
    }
  }
  return batch;
}

LossParts evaluate_windows(const ParamLayout& layout, const Eigen::VectorXd& params, int units,
                           std::span<const ChapterSequence> chapters,
                           const std::vector<Eigen::MatrixXd>& standardized,
                           std::span<const Window> windows, int seq_len) {
  constexpr std::size_t kChunk = 256;
  LossParts total;
  for (std::size_t start = 0; start < windows.size(); start += kChunk) {
    const auto chunk = windows.subspan(start, std::min(kChunk, windows.size() - start));
    const LossParts p =
        loss_parts(layout, params, units, gather(chapters, standardized, chunk, seq_len), nullptr);
    total.sum += p.sum;
    total.weight += p.weight;
  }
  return total;
}

void check_chapter(const ChapterSequence& ch, Eigen::Index dims) {
  if (ch.features.cols() != dims) {
    throw DataError("chapter " + ch.chapter_id + " has " + std::to_string(ch.features.cols()) +
                    " feature columns, expected " + std::to_string(dims));
  }
  if (ch.targets.rows() != ch.features.rows() || ch.targets.cols() != kTargets) {
    throw DataError("chapter " + ch.chapter_id + " targets do not match its features");
  }
  if (ch.mask.size() != 0 && (ch.mask.rows() != ch.targets.rows() || ch.mask.cols() != kTargets)) {
    throw DataError("chapter " + ch.chapter_id + " mask has the wrong shape");
  }
  if (!ch.features.allFinite() || !ch.targets.allFinite()) {
    throw DataError("chapter " + ch.chapter_id + " contains non-finite values");
  }
}

}  // namespace

std::vector<Window> make_windows(std::span<const ChapterSequence> chapters, int seq_len) {
  std::vector<Window> out;
  for (std::size_t c = 0; c < chapters.size(); ++c) {
    const Eigen::Index n = chapters[c].features.rows();
    if (n == 0) continue;
    if (n < seq_len) {
      out.push_back({c, 0, n});
      continue;
    }
    for (Eigen::Index s = 0; s + seq_len <= n; ++s) out.push_back({c, s, seq_len});
  }
  return out;
}

ParamLayout bilstm_layout(Eigen::Index input_dims, int units, int dense) {
  ParamLayout layout;
  for (const char* dir : {"fw", "bw"}) {
    layout.add(std::string(dir) + "_wx", 4 * units, input_dims);
    layout.add(std::string(dir) + "_wh", 4 * units, units);
    layout.add(std::string(dir) + "_b", 4 * units, 1);
  }
  layout.add("dense_w", dense, 2 * units);
  layout.add("dense_b", dense, 1);
  layout.add("out_w", kTargets, dense);
  layout.add("out_b", kTargets, 1);
  return layout;
}

Eigen::VectorXd bilstm_init(const ParamLayout& layout, int units, Rng& rng) {
  Eigen::VectorXd params = Eigen::VectorXd::Zero(layout.size());
  for (std::size_t i : {kFwWx, kFwWh, kBwWx, kBwWh, kDenseW, kOutW}) {
    glorot_uniform(view(params, layout[i]), rng);
  }
  for (std::size_t i : {kFwB, kBwB}) view(params, layout[i]).middleRows(units, units).setOnes();
  return params;
}

double bilstm_loss(const ParamLayout& layout, const Eigen::VectorXd& params, int units,
                   const SequenceBatch& batch, Eigen::VectorXd* grad) {
  const LossParts p = loss_parts(layout, params, units, batch, grad);
  return p.weight > 0.0 ? p.sum / p.weight : 0.0;
}

std::vector<Eigen::MatrixXd> bilstm_forward(const ParamLayout& layout,
                                            const Eigen::VectorXd& params, int units,
                                            const std::vector<Eigen::MatrixXd>& inputs) {
  const auto fw = run_lstm(layout, params, units, kForward, inputs);
  const auto bw = run_lstm(layout, params, units, kBackward, inputs);
  const auto dense_w = view(params, layout[kDenseW]);
  const auto out_w = view(params, layout[kOutW]);
  std::vector<Eigen::MatrixXd> out;
  out.reserve(inputs.size());
  for (std::size_t t = 0; t < inputs.size(); ++t) {
    Eigen::MatrixXd concat(2 * units, inputs[t].cols());
    concat.topRows(units) = fw[t].h;
    concat.bottomRows(units) = bw[t].h;
    Eigen::MatrixXd za = dense_w * concat;
    za.colwise() += view(params, layout[kDenseB]).col(0);
    Eigen::MatrixXd y = out_w * za.array().tanh().matrix();
    y.colwise() += view(params, layout[kOutB]).col(0);
    out.push_back(std::move(y));
  }
  return out;
}

TrainedModel bilstm_fit(std::span<const ChapterSequence> chapters, const BilstmConfig& config) {
  if (config.units < 1 || config.dense < 1 || config.seq_len < 1 || config.epochs < 1 ||
      config.batch_size < 1) {
    throw ConfigError("BiLSTM sizes, epochs and batch_size must be >= 1");
  }
  if (config.val_fraction < 0.0 || config.val_fraction >= 1.0) {
    throw ConfigError("val_fraction must lie in [0, 1)");
  }
  if (chapters.empty()) throw DataError("BiLSTM training needs at least one chapter");
  const Eigen::Index dims = chapters.front().features.cols();
  for (const auto& ch : chapters) check_chapter(ch, dims);

  const std::size_t total_windows = make_windows(chapters, config.seq_len).size();
  if (total_windows < 10) {
    throw DataError("BiLSTM training needs at least 10 windows, got " +
                    std::to_string(total_windows));
  }

  std::size_t n_val = 0;
  if (chapters.size() >= 2 && config.val_fraction > 0.0) {
    n_val = static_cast<std::size_t>(
        std::llround(config.val_fraction * static_cast<double>(chapters.size())));
    n_val = std::clamp<std::size_t>(n_val, 1, chapters.size() - 1);
  }
  const auto train_chapters = chapters.first(chapters.size() - n_val);
  const auto val_chapters = chapters.last(n_val);
  const auto train_windows = make_windows(train_chapters, config.seq_len);
  const auto val_windows = make_windows(val_chapters, config.seq_len);
  if (train_windows.empty()) throw DataError("no training windows left after the split");

  TrainedModel model;
  model.kind = ModelKind::kBilstm;
  model.input_dims = dims;
  model.hidden = {config.units, config.dense};
  model.seq_len = config.seq_len;
  model.seed = config.seed;
  model.layout = bilstm_layout(dims, config.units, config.dense);
  if (config.standardize) {
    Eigen::Index rows = 0;
    for (const auto& ch : train_chapters) rows += ch.features.rows();
    Eigen::MatrixXd stacked(rows, dims);
    Eigen::Index r = 0;
    for (const auto& ch : train_chapters) {
      stacked.middleRows(r, ch.features.rows()) = ch.features;
      r += ch.features.rows();
    }
    model.input = Standardizer::fit(stacked);
  }
  std::vector<Eigen::MatrixXd> standardized;
  standardized.reserve(chapters.size());
  for (const auto& ch : chapters) standardized.push_back(model.input.apply(ch.features));
  const std::vector<Eigen::MatrixXd> train_std(standardized.begin(),
                                               standardized.begin() + train_chapters.size());
  const std::vector<Eigen::MatrixXd> val_std(standardized.begin() + train_chapters.size(),
                                             standardized.end());

  Rng rng(config.seed);
  model.params = bilstm_init(model.layout, config.units, rng);

  Adam adam(model.layout.size(), config.adam);
  Eigen::VectorXd grad(model.layout.size());
  Eigen::VectorXd best_params = model.params;
  double best = std::numeric_limits<double>::infinity();
  const auto batch_size = static_cast<std::size_t>(config.batch_size);
  std::vector<Window> chosen;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    const auto order = shuffled_indices(static_cast<Eigen::Index>(train_windows.size()), rng);
    LossParts epoch_loss;
    for (std::size_t start = 0; start < order.size(); start += batch_size) {
      const std::size_t m = std::min(batch_size, order.size() - start);
      chosen.clear();
      for (std::size_t j = 0; j < m; ++j) {
        chosen.push_back(train_windows[static_cast<std::size_t>(order[start + j])]);
      }
      const SequenceBatch batch = gather(train_chapters, train_std, chosen, config.seq_len);
      const LossParts p = loss_parts(model.layout, model.params, config.units, batch, &grad);
      if (!std::isfinite(p.sum) || !grad.allFinite()) throw TrainingDiverged(epoch);
      epoch_loss.sum += p.sum;
      epoch_loss.weight += p.weight;
      if (p.weight > 0.0) adam.step(model.params, grad);
    }
    EpochLog log{epoch, epoch_loss.weight > 0.0 ? epoch_loss.sum / epoch_loss.weight : 0.0,
                 std::nullopt};
    double score = log.train_loss;
    if (!val_windows.empty()) {
      const LossParts v = evaluate_windows(model.layout, model.params, config.units, val_chapters,
                                           val_std, val_windows, config.seq_len);
      log.val_loss = v.weight > 0.0 ? v.sum / v.weight : 0.0;
      score = *log.val_loss;
    }
    if (!std::isfinite(score)) throw TrainingDiverged(epoch);
    model.training_log.push_back(log);
    if (score < best) {
      best = score;
      best_params = model.params;
      model.selected_epoch = epoch;
    }
  }
  model.params = best_params;

  model.metadata["init"] = "glorot_uniform, forget bias 1";
  model.metadata["optimizer"] = "adam";
  model.metadata["learning_rate"] = util::format_double(config.adam.learning_rate);
  model.metadata["batch_size"] = std::to_string(config.batch_size);
  model.metadata["validation_chapters"] = std::to_string(n_val);
  model.metadata["selection"] = val_windows.empty() ? "train_loss" : "val_loss";
  return model;
}

}  // namespace bookprosody::models
