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

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "bookprosody/error.hpp"
#include "bookprosody/eval/binomial.hpp"
#include "bookprosody/eval/quote_distribution.hpp"
#include "bookprosody/eval/readers.hpp"

using namespace bookprosody;
using namespace bookprosody::eval;

namespace {

// Exact fair-coin tail from integer binomial coefficients (n <= 62).
double exact_fair_tail(int k, int n) {
  std::vector<std::uint64_t> row{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<std::uint64_t> next(row.size() + 1, 0);
    for (std::size_t j = 0; j < row.size(); ++j) {
      next[j] += row[j];
      next[j + 1] += row[j];
    }
    row = std::move(next);
  }
  std::uint64_t hits = 0;
  for (int j = k; j <= n; ++j) hits += row[static_cast<std::size_t>(j)];
  return static_cast<double>(hits) / std::ldexp(1.0, n);
}

DialogueSegment speech(std::string who, std::size_t words, double hz, double db) {
  return {std::move(who), words, hz, 10, db, 10};
}

}  // namespace

TEST_CASE("binomial_upper_tail: reference values") {
  CHECK(binomial_upper_tail(32, 62) == doctest::Approx(0.4495381568264295).epsilon(1e-12));
  CHECK(binomial_upper_tail(52, 62) == doctest::Approx(2.8568068665465324e-08).epsilon(1e-9));
  CHECK(binomial_upper_tail(10, 10) == doctest::Approx(0.0009765625).epsilon(1e-12));
  CHECK(binomial_upper_tail(0, 5) == 1.0);
  CHECK(binomial_upper_tail(6, 5) == 0.0);
  CHECK_THROWS_AS(binomial_upper_tail(1, 5, 1.0), DataError);
  CHECK_THROWS_AS(binomial_upper_tail(1, -1), DataError);
}

TEST_CASE("binomial_upper_tail agrees with exact integer arithmetic") {
  for (int n = 1; n <= 62; ++n) {
    for (int k = 0; k <= n; ++k) {
      const double exact = exact_fair_tail(k, n);
      CHECK(binomial_upper_tail(k, n) == doctest::Approx(exact).epsilon(1e-10));
    }
  }
}

TEST_CASE("property: pmf sums to one and the tail is non-increasing") {
  std::mt19937_64 rng(81);
  std::uniform_real_distribution<double> prob(0.01, 0.99);
  for (long n : {1L, 2L, 7L, 62L, 100L, 333L, 1000L}) {
    const double p = n == 62 ? 0.5 : prob(rng);
    double total = 0.0;
    for (long k = 0; k <= n; ++k) total += std::exp(log_binomial_pmf(n, k, p));
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    double last = 1.0;
    for (long k = 0; k <= n + 1; ++k) {
      const double t = binomial_upper_tail(k, n, p);
      CHECK(t <= last + 1e-15);
      CHECK(t >= 0.0);
      last = t;
    }
  }
}

TEST_CASE("character_stats and character_pair_stats") {
  BookDialogue book;
  book.book_id = "b";
  book.segments = {speech("anna", 5, 220.0, 60.0), speech("bob", 8, 110.0, 66.0),
                   speech("anna", 5, 240.0, 62.0), speech("cy", 2, 180.0, 50.0)};
  book.genders = {{"anna", Gender::kFemale}, {"bob", Gender::kMale}};
  const auto [first, second] = character_pair_stats(book);
  CHECK(first.character_id == "anna");
  CHECK(first.word_count == 10);
  CHECK(*first.mean_pitch_hz == doctest::Approx(230.0));
  CHECK(*first.mean_volume_db == doctest::Approx(61.0));
  CHECK(second.character_id == "bob");
  CHECK(second.gender == Gender::kMale);
  CHECK(character_stats(book).back().gender == Gender::kUnknown);

  SUBCASE("ties break by identifier") {
    book.segments = {speech("zed", 3, 100.0, 60.0), speech("amy", 3, 200.0, 60.0)};
    CHECK(character_pair_stats(book).first.character_id == "amy");
  }
  SUBCASE("single speaker") {
    book.segments = {speech("anna", 5, 220.0, 60.0)};
    CHECK_THROWS_AS(character_pair_stats(book), InsufficientCharacters);
  }
}

TEST_CASE("gender_dialogue_test") {
  std::vector<BookDialogue> books;
  for (int b = 0; b < 10; ++b) {
    BookDialogue book;
    book.book_id = "book" + std::to_string(9 - b);
    book.genders = {{"f", Gender::kFemale}, {"m", Gender::kMale}};
    const bool female_higher = b < 8;
    book.segments = {speech("f", 120, female_higher ? 220.0 : 100.0, 60.0),
                     speech("m", 120, 130.0, b < 5 ? 65.0 : 55.0)};
    books.push_back(book);
  }
  BookDialogue small;
  small.book_id = "tiny";
  small.genders = {{"f", Gender::kFemale}, {"m", Gender::kMale}};
  small.segments = {speech("f", 10, 300.0, 60.0), speech("m", 500, 100.0, 70.0)};
  books.push_back(small);

  const auto r = gender_dialogue_test(books);
  CHECK(r.per_book.size() == 11);
  CHECK(r.per_book.front().book_id == "book0");
  CHECK_FALSE(r.per_book.back().eligible);
  CHECK(r.pitch.n == 10);
  CHECK(r.pitch.k == 8);
  CHECK(r.volume.k == 5);
  CHECK(r.pitch.p_value == doctest::Approx(exact_fair_tail(8, 10)).epsilon(1e-12));
  CHECK(r.volume.p_value == doctest::Approx(exact_fair_tail(5, 10)).epsilon(1e-12));
  CHECK(to_json(r).at("pitch").at("k") == 8);

  CHECK_THROWS_AS(gender_dialogue_test(std::span(books).last(1)), NoData);
  CHECK(gender_dialogue_test(std::span(books).last(1), 10).pitch.n == 1);
}

TEST_CASE("quote_distribution") {
  const std::vector<std::uint8_t> q{1, 1, 0, 0, 0};
  const std::vector<double> v{1.0, 2.0, -1.0, 0.0, 4.0};
  const auto d = quote_distribution(q, v);
  CHECK(d.quote.count == 2);
  CHECK(*d.quote.mean == 1.5);
  CHECK(*d.quote.std == 0.5);
  CHECK(*d.non_quote.mean == 1.0);
  CHECK(*d.gap == 0.5);
  CHECK(d.non_quote.above == 1);
  CHECK(d.quote.histogram[*histogram_bin(1.0)] == 1);
  CHECK(d.warnings.empty());

  CHECK(histogram_bin(-3.0) == 0u);
  CHECK(histogram_bin(3.0) == kBins - 1);
  CHECK(histogram_bin(-0.01) == 11u);
  CHECK(histogram_bin(0.0) == 12u);
  CHECK_FALSE(histogram_bin(3.01));

  const std::vector<std::uint8_t> none{0, 0};
  const std::vector<double> two{0.1, 0.2};
  const auto only = quote_distribution(none, two);
  CHECK_FALSE(only.gap);
  CHECK(only.warnings.size() == 1);

  std::ostringstream csv;
  write_histogram_csv(csv, d);
  CHECK(csv.str().rfind("bin_low,bin_high,quote,non_quote\n-3,-2.75,0,0\n", 0) == 0);
  CHECK_THROWS_AS(quote_distribution(none, v), DataError);
}

TEST_CASE("property: histogram counts partition each class") {
  std::mt19937_64 rng(82);
  std::normal_distribution<double> normal(0.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::uint8_t> q;
    std::vector<double> v;
    for (int i = 0; i < 1 + trial * 3; ++i) {
      q.push_back(static_cast<std::uint8_t>(rng() % 2));
      v.push_back(normal(rng));
    }
    const auto d = quote_distribution(q, v);
    for (const auto* c : {&d.quote, &d.non_quote}) {
      std::size_t total = c->below + c->above;
      for (auto h : c->histogram) total += h;
      CHECK(total == c->count);
    }
    CHECK(d.quote.count + d.non_quote.count == v.size());
  }
}
