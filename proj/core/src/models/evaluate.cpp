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

#include "bookprosody/models/evaluate.hpp"

#include <cmath>
#include <map>
#include <ostream>

#include <nlohmann/json.hpp>

#include "bookprosody/error.hpp"
#include "bookprosody/util/text.hpp"

namespace bookprosody::models {

namespace {

constexpr std::array<const char*, 3> kNames{"pitch", "volume", "rate"};

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json triple_json(const std::array<std::optional<double>, 3>& v) {
  nlohmann::json out = nlohmann::json::object();
  for (std::size_t a = 0; a < 3; ++a) out[kNames[a]] = optional_json(v[a]);
  return out;
}

struct Accumulator {
  std::array<double, 3> sq{};
  std::array<std::size_t, 3> n{};
};

}  // namespace

std::string_view subset_name(Subset s) { return s == Subset::kAll ? "all" : "dialogue"; }

Subset parse_subset(std::string_view name) {
  if (name == "all") return Subset::kAll;
  if (name == "dialogue" || name == "dialogue_only") return Subset::kDialogue;
  throw ConfigError("unknown subset '" + std::string(name) + "' (expected all or dialogue)");
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return std::nullopt;
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

EvalReport evaluate(std::span<const ChapterEval> chapters, Subset subset) {
  EvalReport report;
  report.subset = subset;
  Accumulator pooled;
  std::map<std::string, Accumulator> by_book_acc;
  std::map<std::string, BookScore> by_book;
  std::map<std::string, std::array<std::vector<double>, 3>> book_r;

  for (const auto& ch : chapters) {
    const Eigen::Index n = ch.target.rows();
    if (ch.predicted.rows() != n || ch.predicted.cols() != 3 || ch.target.cols() != 3 ||
        static_cast<Eigen::Index>(ch.is_quote.size()) != n ||
        (ch.mask.size() != 0 && (ch.mask.rows() != n || ch.mask.cols() != 3))) {
      throw DataError("evaluation inputs for chapter " + ch.chapter_id + " have mismatched shapes");
    }
    ChapterScore score{ch.book_id, ch.chapter_id, 0, {}};
    std::array<std::vector<double>, 3> pred;
    std::array<std::vector<double>, 3> truth;
    Accumulator& book_acc = by_book_acc[ch.book_id];
    for (Eigen::Index r = 0; r < n; ++r) {
      if (subset == Subset::kDialogue && !ch.is_quote[static_cast<std::size_t>(r)]) continue;
      ++score.segments;
      for (std::size_t a = 0; a < 3; ++a) {
        const auto col = static_cast<Eigen::Index>(a);
        if (ch.mask.size() != 0 && ch.mask(r, col) <= 0.0) continue;
        const double e = ch.predicted(r, col) - ch.target(r, col);
        pooled.sq[a] += e * e;
        ++pooled.n[a];
        book_acc.sq[a] += e * e;
        ++book_acc.n[a];
        pred[a].push_back(ch.predicted(r, col));
        truth[a].push_back(ch.target(r, col));
      }
    }
    for (std::size_t a = 0; a < 3; ++a) {
      score.pearson[a] = pearson(pred[a], truth[a]);
      if (score.pearson[a]) book_r[ch.book_id][a].push_back(*score.pearson[a]);
    }
    BookScore& book = by_book[ch.book_id];
    book.book_id = ch.book_id;
    ++book.chapters;
    book.segments += score.segments;
    report.segments += score.segments;
    report.chapters.push_back(std::move(score));
  }

  if (pooled.n[0] + pooled.n[1] + pooled.n[2] == 0) {
    throw NoData(std::string("no segments to evaluate in subset '") +
                 std::string(subset_name(subset)) + "'");
  }
  for (std::size_t a = 0; a < 3; ++a) {
    report.counts[a] = pooled.n[a];
    report.mse[a] = pooled.n[a] ? pooled.sq[a] / static_cast<double>(pooled.n[a]) : 0.0;
  }
  for (auto& [id, book] : by_book) {
    const Accumulator& acc = by_book_acc[id];
    for (std::size_t a = 0; a < 3; ++a) {
      if (acc.n[a]) book.mse[a] = acc.sq[a] / static_cast<double>(acc.n[a]);
      const auto& rs = book_r[id][a];
      if (!rs.empty()) {
        double sum = 0.0;
        for (double r : rs) sum += r;
        book.mean_pearson[a] = sum / static_cast<double>(rs.size());
      }
    }
    report.books.push_back(book);
  }
  return report;
}

nlohmann::json to_json(const EvalReport& report) {
  nlohmann::json mse = nlohmann::json::object();
  nlohmann::json counts = nlohmann::json::object();
  for (std::size_t a = 0; a < 3; ++a) {
    mse[kNames[a]] = report.mse[a];
    counts[kNames[a]] = report.counts[a];
  }
  nlohmann::json books = nlohmann::json::array();
  for (const auto& b : report.books) {
    books.push_back({{"book_id", b.book_id},
                     {"chapters", b.chapters},
                     {"segments", b.segments},
                     {"mse", triple_json(b.mse)},
                     {"mean_pearson", triple_json(b.mean_pearson)}});
  }
  nlohmann::json chapters = nlohmann::json::array();
  for (const auto& c : report.chapters) {
    chapters.push_back({{"book_id", c.book_id},
                        {"chapter_id", c.chapter_id},
                        {"segments", c.segments},
                        {"pearson", triple_json(c.pearson)}});
  }
  return {{"subset", subset_name(report.subset)},
          {"segments", report.segments},
          {"mse", std::move(mse)},
          {"counts", std::move(counts)},
          {"books", std::move(books)},
          {"chapters", std::move(chapters)}};
}

void write_report_csv(std::ostream& out, const EvalReport& report) {
  out << "book_id,attribute,mse,mean_pearson,chapters,segments\n";
  for (const auto& b : report.books) {
    for (std::size_t a = 0; a < 3; ++a) {
      out << b.book_id << ',' << kNames[a] << ','
          << (b.mse[a] ? util::format_double(*b.mse[a]) : "") << ','
          << (b.mean_pearson[a] ? util::format_double(*b.mean_pearson[a]) : "") << ','
          << b.chapters << ',' << b.segments << '\n';
    }
  }
}

}  // namespace bookprosody::models
