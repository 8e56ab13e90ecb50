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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bookprosody/error.hpp"
#include "bookprosody/models/bilstm.hpp"
#include "bookprosody/models/evaluate.hpp"
#include "bookprosody/models/linreg.hpp"
#include "bookprosody/models/mlp.hpp"
#include "bookprosody/models/split.hpp"
#include "bookprosody/models/trained_model.hpp"
#include "bookprosody/models/window.hpp"
#include "fixture_corpus.hpp"

using namespace bookprosody;
using namespace bookprosody::models;

namespace {

Eigen::MatrixXd gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng,
                         double sigma = 1.0) {
  std::normal_distribution<double> normal(0.0, sigma);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  }
  return m;
}

double relative_error(double a, double n) {
  return std::abs(a - n) / std::max(std::abs(a) + std::abs(n), 1e-6);
}

template <typename Loss>
double worst_gradient_error(const Eigen::VectorXd& params, Loss loss, std::mt19937_64& rng,
                            int probes) {
  Eigen::VectorXd grad(params.size());
  loss(params, &grad);
  std::uniform_int_distribution<Eigen::Index> pick(0, params.size() - 1);
  double worst = 0.0;
  for (int k = 0; k < probes; ++k) {
    const Eigen::Index i = pick(rng);
    Eigen::VectorXd plus = params;
    Eigen::VectorXd minus = params;
    plus(i) += 1e-5;
    minus(i) -= 1e-5;
    const double numeric = (loss(plus, nullptr) - loss(minus, nullptr)) / 2e-5;
    worst = std::max(worst, relative_error(grad(i), numeric));
  }
  return worst;
}

double mse(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).squaredNorm() / static_cast<double>(a.size());
}

}  // namespace

TEST_CASE("linreg_fit: exactly determined system") {
  Eigen::MatrixXd x(2, 1);
  x << 0, 1;
  Eigen::MatrixXd y(2, 3);
  y << 0, 0, 0, 1, 2, 3;
  const auto m = linreg_fit(x, y, 0.0);
  const auto w = view(m.params, m.layout.at("weight"));
  const auto b = view(m.params, m.layout.at("bias"));
  CHECK(std::abs(w(0, 0) - 1.0) <= 1e-8);
  CHECK(std::abs(w(1, 0) - 2.0) <= 1e-8);
  CHECK(std::abs(w(2, 0) - 3.0) <= 1e-8);
  CHECK(b.cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("linreg_fit: constant targets and duplicated columns") {
  std::mt19937_64 rng(61);
  Eigen::MatrixXd x = gaussian(30, 3, rng);
  const Eigen::MatrixXd y = Eigen::MatrixXd::Constant(30, 3, 2.5);
  const auto m = linreg_fit(x, y);
  CHECK(view(m.params, m.layout.at("weight")).cwiseAbs().maxCoeff() <= 1e-6);
  CHECK((view(m.params, m.layout.at("bias")).array() - 2.5).abs().maxCoeff() <= 1e-6);

  x.col(2) = x.col(1);
  const auto dup = linreg_fit(x, gaussian(30, 3, rng));
  CHECK(dup.params.allFinite());

  Eigen::MatrixXd bad = x;
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS(linreg_fit(bad, y), DataError);
  CHECK_THROWS_AS(linreg_fit(x, Eigen::MatrixXd::Zero(29, 3)), DataError);
}

TEST_CASE("linreg_fit matches the pseudo-inverse solution") {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXd x = gaussian(50, 5, rng);
    const Eigen::MatrixXd y = gaussian(50, 3, rng);
    Eigen::MatrixXd a(50, 6);
    a << x, Eigen::VectorXd::Ones(50);
    const Eigen::MatrixXd coef = a.completeOrthogonalDecomposition().pseudoInverse() * y;
    const auto m = linreg_fit(x, y);
    const Eigen::MatrixXd w = view(m.params, m.layout.at("weight"));
    const Eigen::MatrixXd b = view(m.params, m.layout.at("bias"));
    CHECK((w.transpose() - coef.topRows(5)).cwiseAbs().maxCoeff() <= 1e-6);
    CHECK((b.transpose() - coef.bottomRows(1)).cwiseAbs().maxCoeff() <= 1e-6);
    CHECK((linreg_forward(m, x) - a * coef).cwiseAbs().maxCoeff() <= 1e-6);
  }
}

TEST_CASE("mlp_loss gradient matches central differences") {
  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 5; ++trial) {
    const auto layout = mlp_layout(4, 5, 3);
    const Eigen::VectorXd params = gaussian(layout.size(), 1, rng, 0.5);
    const Eigen::MatrixXd x = gaussian(4, 7, rng);
    const Eigen::MatrixXd y = gaussian(3, 7, rng);
    const double err = worst_gradient_error(
        params,
        [&](const Eigen::VectorXd& p, Eigen::VectorXd* g) { return mlp_loss(layout, p, x, y, 0.01, g); },
        rng, 20);
    CHECK(err < 1e-4);
  }
}

TEST_CASE("mlp_fit: planted linear signal is recovered") {
  std::mt19937_64 rng(64);
  const Eigen::MatrixXd w = gaussian(4, 3, rng, 0.5);
  const Eigen::MatrixXd x_train = gaussian(2000, 4, rng);
  const Eigen::MatrixXd x_test = gaussian(500, 4, rng);
  const Eigen::MatrixXd y_train = x_train * w + gaussian(2000, 3, rng, 0.1);
  const Eigen::MatrixXd y_test = x_test * w + gaussian(500, 3, rng, 0.1);
  MlpConfig cfg;
  cfg.seed = 5;
  const auto model = mlp_fit(x_train, y_train, cfg);
  const auto pred = mlp_forward(model.layout, model.params, model.input.apply(x_test));
  CHECK(mse(pred, y_test) < 1.5 * 0.01);
}

TEST_CASE("mlp_fit: zero labels collapse to zero output") {
  std::mt19937_64 rng(65);
  const Eigen::MatrixXd x = gaussian(2000, 3, rng);
  MlpConfig cfg;
  cfg.seed = 1;
  const auto model = mlp_fit(x, Eigen::MatrixXd::Zero(2000, 3), cfg);
  const auto pred = mlp_forward(model.layout, model.params, model.input.apply(x));
  CHECK(pred.squaredNorm() / pred.size() < 1e-3);
}

TEST_CASE("mlp_fit: uninformative inputs give the mean-collapse error") {
  std::mt19937_64 rng(66);
  Eigen::MatrixXd y = gaussian(1500, 3, rng);
  y = y.rowwise() - y.colwise().mean();
  y = y.array().rowwise() / (y.array().square().colwise().mean().sqrt());
  const Eigen::MatrixXd x = gaussian(1500, 5, rng);
  MlpConfig cfg;
  cfg.hidden1 = 5;
  cfg.hidden2 = 5;
  const auto model = mlp_fit(x.topRows(1000), y.topRows(1000), cfg);
  const auto pred =
      mlp_forward(model.layout, model.params, model.input.apply(x.bottomRows(500)));
  CHECK(mse(pred, y.bottomRows(500)) == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("mlp_fit is deterministic and serializes bit-exactly") {
  std::mt19937_64 rng(67);
  const Eigen::MatrixXd x = gaussian(80, 3, rng);
  const Eigen::MatrixXd y = gaussian(80, 3, rng);
  MlpConfig cfg;
  cfg.max_epochs = 20;
  cfg.seed = 3;
  const auto a = to_json(mlp_fit(x, y, cfg)).dump();
  const auto b = to_json(mlp_fit(x, y, cfg)).dump();
  CHECK(a == b);
  CHECK(to_json(model_from_json(nlohmann::json::parse(a))).dump() == a);

  cfg.adam.learning_rate = 1e300;
  CHECK_THROWS_AS(mlp_fit(x, y * 1e300, cfg), TrainingDiverged);
}

TEST_CASE("bilstm_loss gradient matches central differences") {
  std::mt19937_64 rng(68);
  for (int trial = 0; trial < 5; ++trial) {
    const int units = 3;
    const auto layout = bilstm_layout(2, units, 4);
    Rng init(trial);
    const Eigen::VectorXd params = bilstm_init(layout, units, init);
    SequenceBatch batch;
    for (int t = 0; t < 3; ++t) {
      batch.inputs.push_back(gaussian(2, 4, rng));
      batch.targets.push_back(gaussian(3, 4, rng));
      Eigen::MatrixXd mask = Eigen::MatrixXd::Ones(3, 4);
      mask(t, 1) = 0.0;
      batch.masks.push_back(mask);
    }
    const double err = worst_gradient_error(
        params,
        [&](const Eigen::VectorXd& p, Eigen::VectorXd* g) {
          return bilstm_loss(layout, p, units, batch, g);
        },
        rng, 20);
    CHECK(err < 1e-4);
  }
}

TEST_CASE("make_windows") {
  std::vector<ChapterSequence> chapters(3);
  chapters[0].features = Eigen::MatrixXd::Zero(4, 2);
  chapters[1].features = Eigen::MatrixXd::Zero(2, 2);
  chapters[2].features = Eigen::MatrixXd::Zero(0, 2);
  const auto w = make_windows(chapters, 3);
  REQUIRE(w.size() == 3);
  CHECK(w[0].start == 0);
  CHECK(w[1].start == 1);
  CHECK(w[1].valid == 3);
  CHECK(w[2].chapter == 1);
  CHECK(w[2].valid == 2);
}

TEST_CASE("bilstm_fit: constant targets, determinism and window floor") {
  std::mt19937_64 rng(69);
  std::vector<ChapterSequence> chapters;
  for (int c = 0; c < 20; ++c) {
    ChapterSequence ch;
    ch.chapter_id = "c" + std::to_string(c);
    ch.features = gaussian(60, 3, rng);
    ch.targets = Eigen::MatrixXd::Constant(60, 3, 0.7);
    chapters.push_back(ch);
  }
  BilstmConfig cfg;
  cfg.seed = 9;
  const auto a = bilstm_fit(chapters, cfg);
  REQUIRE(a.training_log.size() == 30);
  REQUIRE(a.training_log.back().val_loss);
  double best = 1e9;
  for (const auto& e : a.training_log) best = std::min(best, *e.val_loss);
  CHECK(best < 1e-3);
  CHECK(*a.training_log[a.selected_epoch - 1].val_loss == best);
  CHECK(a.metadata.at("validation_chapters") == "3");

  const auto b = bilstm_fit(chapters, cfg);
  CHECK(to_json(a).dump() == to_json(b).dump());

  const auto pred = sliding_window_predict(a, chapters[0].features);
  CHECK((pred.mean.array() - 0.7).abs().maxCoeff() < 0.05);

  std::vector<ChapterSequence> tiny(1);
  tiny[0].features = gaussian(5, 3, rng);
  tiny[0].targets = Eigen::MatrixXd::Zero(5, 3);
  CHECK_THROWS_AS(bilstm_fit(tiny, cfg), DataError);
}

TEST_CASE("sliding_window_predict: coverage and constant identity") {
  std::mt19937_64 rng(70);
  const Eigen::MatrixXd features = gaussian(4, 2, rng);
  const double c = 0.1 + 0.2;  // not exactly representable on purpose
  const WindowFn constant = [&](const Eigen::MatrixXd&, Eigen::Index valid) {
    return Eigen::MatrixXd::Constant(valid, 3, c);
  };
  const auto out = sliding_window_predict(constant, features, 3);
  CHECK(out.coverage == std::vector<int>{1, 2, 2, 1});
  for (Eigen::Index i = 0; i < out.mean.size(); ++i) CHECK(out.mean.data()[i] == c);

  SUBCASE("short chapter uses one padded window") {
    const auto short_out = sliding_window_predict(constant, features.topRows(2), 3);
    CHECK(short_out.coverage == std::vector<int>{1, 1});
  }
  SUBCASE("window length one is the per-row prediction") {
    const WindowFn row_sum = [](const Eigen::MatrixXd& w, Eigen::Index valid) {
      Eigen::MatrixXd out(valid, 3);
      for (Eigen::Index r = 0; r < valid; ++r) out.row(r).setConstant(w.row(r).sum());
      return out;
    };
    const auto l1 = sliding_window_predict(row_sum, features, 1);
    for (Eigen::Index r = 0; r < 4; ++r) CHECK(l1.mean(r, 0) == features.row(r).sum());
  }
  CHECK_THROWS_AS(sliding_window_predict(constant, Eigen::MatrixXd(0, 2), 3), DataError);
}

TEST_CASE("property: windowed prediction is linear in the model output") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 30; ++trial) {
    const int l = 1 + trial % 3;
    const Eigen::MatrixXd features = gaussian(1 + trial % 9, 2, rng);
    const Eigen::MatrixXd a = gaussian(3, 2 * l, rng);
    const Eigen::MatrixXd b = gaussian(3, 2 * l, rng);
    auto linear = [l](const Eigen::MatrixXd& weights) {
      return WindowFn([weights, l](const Eigen::MatrixXd& w, Eigen::Index valid) {
        Eigen::MatrixXd out(valid, 3);
        for (Eigen::Index r = 0; r < valid; ++r) {
          out.row(r) = (weights.middleCols(2 * (r % l), 2) * w.row(r).transpose()).transpose();
          out.row(r).array() += static_cast<double>(r);
        }
        return out;
      });
    };
    const WindowFn fa = linear(a);
    const WindowFn fb = linear(b);
    const WindowFn sum = [&](const Eigen::MatrixXd& w, Eigen::Index valid) {
      return Eigen::MatrixXd(fa(w, valid) + fb(w, valid));
    };
    const auto pa = sliding_window_predict(fa, features, l);
    const auto pb = sliding_window_predict(fb, features, l);
    const auto ps = sliding_window_predict(sum, features, l);
    CHECK((ps.mean - pa.mean - pb.mean).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("evaluate") {
  std::mt19937_64 rng(72);
  std::vector<ChapterEval> chapters;
  for (int c = 0; c < 4; ++c) {
    ChapterEval ch;
    ch.book_id = c < 2 ? "b1" : "b2";
    ch.chapter_id = "c" + std::to_string(c);
    Eigen::MatrixXd t = gaussian(25, 3, rng);
    t = t.rowwise() - t.colwise().mean();
    t = t.array().rowwise() / t.array().square().colwise().mean().sqrt();
    ch.target = t;
    ch.predicted = t;
    for (int i = 0; i < 25; ++i) ch.is_quote.push_back(i % 3 == 0);
    chapters.push_back(ch);
  }

  SUBCASE("perfect predictions") {
    const auto r = evaluate(chapters, Subset::kAll);
    for (int a = 0; a < 3; ++a) CHECK(r.mse[a] == 0.0);
    for (const auto& cs : r.chapters) {
      for (const auto& p : cs.pearson) CHECK(*p == doctest::Approx(1.0).epsilon(1e-12));
    }
    REQUIRE(r.books.size() == 2);
    CHECK(r.books[0].book_id == "b1");
    CHECK(r.books[0].chapters == 2);
  }
  SUBCASE("zero predictions on z-scored targets") {
    for (auto& ch : chapters) ch.predicted.setZero();
    const auto r = evaluate(chapters, Subset::kAll);
    for (int a = 0; a < 3; ++a) CHECK(std::abs(r.mse[a] - 1.0) <= 1e-6);
  }
  SUBCASE("dialogue subset keeps exactly the quote segments") {
    for (auto& ch : chapters) ch.predicted.setZero();
    const auto r = evaluate(chapters, Subset::kDialogue);
    CHECK(r.segments == 4 * 9);
    double sq = 0.0;
    for (const auto& ch : chapters) {
      for (int i = 0; i < 25; i += 3) sq += ch.target(i, 0) * ch.target(i, 0);
    }
    CHECK(r.mse[0] == doctest::Approx(sq / 36.0).epsilon(1e-12));
  }
  SUBCASE("masked targets are skipped") {
    chapters[0].mask = Eigen::MatrixXd::Ones(25, 3);
    chapters[0].mask(0, 0) = 0.0;
    chapters[0].predicted(0, 0) = 100.0;
    const auto r = evaluate(chapters, Subset::kAll);
    CHECK(r.mse[0] == 0.0);
    CHECK(r.counts[0] == 99);
  }
  SUBCASE("empty subset") {
    for (auto& ch : chapters) std::fill(ch.is_quote.begin(), ch.is_quote.end(), 0);
    CHECK_THROWS_AS(evaluate(chapters, Subset::kDialogue), NoData);
  }
  SUBCASE("report CSV") {
    std::ostringstream out;
    write_report_csv(out, evaluate(chapters, Subset::kAll));
    CHECK(out.str().rfind("book_id,attribute,mse,mean_pearson,chapters,segments\n", 0) == 0);
  }
  CHECK(parse_subset("dialogue") == Subset::kDialogue);
  CHECK_THROWS_AS(parse_subset("nope"), ConfigError);
}

TEST_CASE("split_books: determinism and hygiene") {
  std::vector<std::string> ids;
  for (int i = 0; i < 93; ++i) ids.push_back("book" + std::to_string(i));
  const auto a = split_books(ids, 0.75, 7);
  const auto b = split_books(ids, 0.75, 7);
  CHECK(a.train == b.train);
  CHECK(a.test == b.test);
  CHECK(a.train.size() == 69);
  CHECK(a.test.size() == 24);
  std::set<std::string> train(a.train.begin(), a.train.end());
  for (const auto& t : a.test) CHECK(train.count(t) == 0);
  CHECK(train.size() + a.test.size() == ids.size());
  CHECK(std::is_sorted(a.test.begin(), a.test.end()));
  CHECK(split_books(ids, 0.75, 8).train != a.train);

  auto reversed = ids;
  std::reverse(reversed.begin(), reversed.end());
  CHECK(split_books(reversed, 0.75, 7).train == a.train);

  const auto back = split_from_json(nlohmann::json::parse(to_json(a).dump()));
  CHECK(back.train == a.train);
  CHECK(back.seed == 7);

  CHECK(split_books({"x", "y"}, 0.99, 1).test.size() == 1);
  CHECK_THROWS_AS(split_books(ids, 1.0, 1), ConfigError);
  CHECK_THROWS_AS(split_books({}, 0.5, 1), NoData);
}

TEST_CASE("property: no seed puts a book on both sides") {
  std::mt19937_64 rng(73);
  std::uniform_int_distribution<int> count(2, 40);
  std::uniform_real_distribution<double> ratio(0.05, 0.95);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> ids;
    for (int i = count(rng); i > 0; --i) ids.push_back("b" + std::to_string(i));
    const auto s = split_books(ids, ratio(rng), rng());
    for (const auto& t : s.test) {
      CHECK_FALSE(s.is_train(t));
      CHECK(s.is_test(t));
    }
    CHECK(!s.train.empty());
    CHECK(!s.test.empty());
  }
}

TEST_CASE("model checkpoints") {
  std::mt19937_64 rng(74);
  const auto m = linreg_fit(gaussian(20, 4, rng), gaussian(20, 3, rng));
  testing::TempDir dir;
  save_model(dir.path() / "m.json", m);
  const auto back = load_model(dir.path() / "m.json");
  CHECK(back.params == m.params);
  CHECK(back.layout == m.layout);

  auto j = to_json(m);
  j["kind"] = "transformer";
  CHECK_THROWS_AS(model_from_json(j), SchemaError);
  j = to_json(m);
  j.erase("weights");
  CHECK_THROWS_AS(model_from_json(j), SchemaError);
}
