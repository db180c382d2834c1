// Copyright 2026 The AHT Authors. All rights reserved.
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "aht/bounds.h"
#include "aht/montecarlo.h"
#include "aht/strategy.h"
#include "test_util.h"

namespace aht {
namespace {

namespace frozen = testing::frozen;

TEST_CASE("weak converse") {
  const auto m = testing::Table1();
  const auto g = SolveGame(m, 0);
  const Belief prior = Belief::Prior(m);
  CHECK(WeakConverse(g, prior, 500, 0.02) ==
        doctest::Approx(frozen::kWeak500).epsilon(1e-12));
  CHECK(WeakConverse(g, prior, 500, 0.0) ==
        doctest::Approx(g.value + 2 * std::log(2.0) / 500).epsilon(1e-12));
  CHECK(std::abs(WeakConverse(g, prior, 100000000, 1e-9) - g.value) < 1e-7);
  CHECK_THROWS_AS(WeakConverse(g, prior, 500, 1.0), std::invalid_argument);
  // The rearranged form sits at D* by construction.
  const double w = WeakConverse(g, prior, 300, 0.03);
  CHECK(std::abs(w * 0.97 - 2 * std::log(2.0) / 300 - g.value) < 1e-12);
}

TEST_CASE("symmetric weak converse is the tightest per-hypothesis bound") {
  const auto m = testing::Table1();
  std::vector<GameSolution> games;
  for (int i = 0; i < 3; ++i) games.push_back(SolveGame(m, i));
  const Belief prior = Belief::Prior(m);
  const double sym = WeakConverseSymmetric(games, prior, 200, 0.05);
  CHECK(sym == doctest::Approx(WeakConverse(games[0], prior, 200, 0.05) +
                               std::log(1.5) / 200));
}

TEST_CASE("empirical strong converse") {
  const std::vector<double> z(10, 2.0);
  const double eps = 0.1;
  CHECK(StrongConverseEmpirical(z, 0.5, 2.5, eps).value() ==
        doctest::Approx(2.5 - std::log(0.9)));
  CHECK(StrongConverseEmpirical(z, 0.5, 1e9, eps).value() ==
        doctest::Approx(1e9 - std::log(0.9)));
  CHECK_FALSE(StrongConverseEmpirical(z, 0.5, 2.4, eps).has_value());
  CHECK_THROWS_AS(StrongConverseEmpirical({}, 0.0, 0.0, eps),
                  std::invalid_argument);
  const std::vector<double> spread = {0.0, 1.0, 2.0, 3.0};
  const auto t = TightestStrongConverse(spread, 0.0, 0.2);
  REQUIRE(t.has_value());
  // Candidates: chi=1 -> 1 - ln .3, chi=2 -> 2 - ln .55, chi=3 -> 3 - ln .8.
  CHECK(t->bound == doctest::Approx(1.0 - std::log(0.3)));
  CHECK(t->chi == 1.0);
  CHECK_FALSE(TightestStrongConverse(spread, 0.0, 1.0).has_value());
}

TEST_CASE("binomial quantile") {
  CHECK(BinomialQuantile(1, 0.5, 0.5) == 0);
  // CDF(1) = 0.75 < 0.8 <= CDF(2).
  CHECK(BinomialQuantile(2, 0.5, 0.8) == 2);
  CHECK(BinomialQuantile(7, 0.3, 1.0 - 1e-15) == 7);
  for (const auto& c : frozen::kQuantiles) {
    CHECK(BinomialQuantile(c.n, 0.6, 2 * c.eps) == c.quantile);
  }
  for (int n : {1, 5, 40, 300}) {
    for (double p : {0.1, 0.5, 0.6, 0.93}) {
      int prev = 0;
      for (double q = 0.01; q < 1.0; q += 0.0137) {
        const int k = BinomialQuantile(n, p, q);
        CHECK(k >= prev);
        prev = k;
        CHECK(testing::NaiveBinomialCdf(n, p, k) >= q - 1e-12);
        if (k > 0) CHECK(testing::NaiveBinomialCdf(n, p, k - 1) < q + 1e-12);
        CHECK(std::abs(BinomialCdf(n, p, k) - testing::NaiveBinomialCdf(n, p, k)) <
              1e-12);
      }
    }
  }
}

TEST_CASE("binary strong bound") {
  for (const auto& c : frozen::kQuantiles) {
    CHECK(StrongBoundBinaryExample(c.n, 0.6, c.eps) ==
          doctest::Approx(c.strong).epsilon(1e-12));
  }
  CHECK(StrongBoundBinaryExample(300, 0.5, 0.05) ==
        doctest::Approx(std::log(2.0) - std::log(0.05)));
  double prev = 0.0;
  for (int n = 50; n <= 1000; n += 50) {
    const double b = StrongBoundBinaryExample(n, 0.6, 0.02);
    CHECK(b > prev);
    prev = b;
  }
  CHECK_THROWS_AS(StrongBoundBinaryExample(10, 1.2, 0.02),
                  std::invalid_argument);
}

TEST_CASE("z bar on table1 counts zeros under any fixed strategy") {
  const auto m = testing::Table1();
  const auto g = SolveGame(m, 0);
  const double r = std::log(0.6 / 0.4);
  const Policy policies[] = {
      [](const Belief&) { return 0; },
      [&](const Belief& b) { return b.prob(1) >= b.prob(2) ? 1 : 0; },
      [](const Belief& b) { return static_cast<int>(b.prob(0) * 1e6) % 2; },
  };
  for (const auto& policy : policies) {
    for (int n = 1; n <= 10; ++n) {
      EnumeratePaths(m, policy, n, 0, g.beta_star,
                     [&](const Trajectory& t, std::span<const double>) {
                       int zeros = 0;
                       for (const auto& s : t.history()) {
                         zeros += s.observation == 0;
                       }
                       CHECK(std::abs(*t.z_bar() - (zeros - n / 2.0) * r) <
                             1e-12);
                     });
    }
  }
}

TEST_CASE("bounds table") {
  const auto m = testing::Table1();
  const int ns[] = {100, 500};
  const auto rows = BoundsTable(m, SolveGame(m, 0), ns, -1.0);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].epsilon == 0.02);
  CHECK(rows[1].weak_rate == doctest::Approx(frozen::kWeak500));
  CHECK(rows[1].strong_nats == doctest::Approx(17.1745885373412));
  CHECK(rows[1].strong_db == doctest::Approx(17.1745885373412 * 10 / std::log(10.0)));
  const auto t2 = testing::Table2();
  CHECK(std::isnan(BoundsTable(t2, SolveGame(t2, 0), ns, 0.05)[0].strong_nats));
}

}  // namespace
}  // namespace aht
