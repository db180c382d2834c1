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
#include <random>

#include "aht/game.h"
#include "aht/simplex.h"
#include "test_util.h"

namespace aht {
namespace {

using testing::frozen::kDStarTable1;
using testing::frozen::kKlBern64;

TEST_CASE("simplex on a textbook LP") {
  // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36.
  const auto r = SolveLp({{1, 0}, {0, 2}, {3, 2}}, {4, 12, 18}, {3, 5});
  REQUIRE(r.optimal);
  CHECK(r.objective == doctest::Approx(36.0));
  CHECK(r.x[0] == doctest::Approx(2.0));
  CHECK(r.x[1] == doctest::Approx(6.0));
  double dual_obj = 4 * r.dual[0] + 12 * r.dual[1] + 18 * r.dual[2];
  CHECK(dual_obj == doctest::Approx(36.0));
  CHECK_FALSE(SolveLp({{-1.0}}, {1.0}, {1.0}).optimal);
}

TEST_CASE("payoff examples") {
  const auto m = testing::Table1();
  const auto a = PayoffMatrix(m, 0);
  const double pa[] = {1.0, 0.0}, p1[] = {1.0, 0.0}, half[] = {0.5, 0.5};
  CHECK(Payoff(pa, p1, a) == doctest::Approx(kKlBern64).epsilon(1e-13));
  CHECK(Payoff(half, half, a) == doctest::Approx(kDStarTable1).epsilon(1e-13));
  const Matrix zero(3, std::vector<double>(2, 0.0));
  const double a3[] = {0.2, 0.3, 0.5};
  CHECK(Payoff(a3, half, zero) == 0.0);
  CHECK_THROWS_AS(Payoff(a3, half, a), GameError);
}

TEST_CASE("table1 reference 0") {
  const auto s = SolveGame(testing::Table1(), 0);
  CHECK(std::abs(s.value - kDStarTable1) < 1e-12);
  CHECK(std::abs(s.alpha_star[0] - 0.5) < 1e-12);
  CHECK(std::abs(s.beta_star[1] - 0.5) < 1e-12);
  CHECK(s.alternates == std::vector<int>{1, 2});
  const auto v = VerifyMinimax(s, 1e-8);
  CHECK(v.pass);
  CHECK(v.gap < 1e-12);
}

TEST_CASE("table1 other references put all weight on one sensor") {
  const auto m = testing::Table1();
  const auto s1 = SolveGame(m, 1);
  CHECK(s1.value == doctest::Approx(kKlBern64).epsilon(1e-12));
  CHECK(s1.alpha_star[0] == doctest::Approx(1.0));
  const auto s2 = SolveGame(m, 2);
  CHECK(s2.alpha_star[1] == doctest::Approx(1.0));
}

TEST_CASE("table2 reference 0 matches the offline oracle") {
  const auto s = SolveGame(testing::Table2(), 0);
  CHECK(std::abs(s.value - testing::frozen::kDStarTable2) < 1e-12);
  CHECK(s.alpha_star[0] < 1e-12);
  CHECK(s.alpha_star[1] < 1e-12);
  CHECK(std::abs(s.alpha_star[2] - 0.5) < 1e-10);
  CHECK(std::abs(s.payoff[2][0] - testing::frozen::kPayoffC1) < 1e-13);
  CHECK(std::abs(s.payoff[2][1] - testing::frozen::kPayoffC2) < 1e-13);
  CHECK(VerifyMinimax(s, 1e-8).pass);
}

TEST_CASE("one by one game") {
  std::mt19937_64 rng(1);
  const auto m = testing::RandomModel(rng, 2, 1, 3);
  const auto s = SolveGame(m, 0);
  CHECK(s.value == doctest::Approx(KlDivergence(m, 0, 1, 0)).epsilon(1e-12));
  CHECK(s.alpha_star == std::vector<double>{1.0});
  CHECK(s.beta_star == std::vector<double>{1.0});
  CHECK(VerifyMinimax(s, 0.0).gap == 0.0);
}

TEST_CASE("perturbed alpha fails verification") {
  auto s = SolveGame(testing::Table1(), 0);
  s.alpha_star = {0.6, 0.4};
  const auto v = VerifyMinimax(s, 1e-8);
  CHECK_FALSE(v.pass);
  CHECK(v.message.find("exceeds") != std::string::npos);
}

TEST_CASE("indistinguishable alternate gives a zero value with a warning") {
  const auto m = LoadModel(R"({"hypotheses": ["a", "b"],
      "experiments": ["U"], "observations": ["0", "1"], "prior": [0.5, 0.5],
      "kernel": {"U": {"a": [0.3, 0.7], "b": [0.3, 0.7]}}})");
  const auto s = SolveGame(m, 0);
  CHECK(s.value == 0.0);
  CHECK(s.warnings.size() == 1);
}

TEST_CASE("random games: duality and grid oracle") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 60; ++rep) {
    const int mh = 2 + rep % 4;
    const int nu = 1 + rep % 3;
    const auto m = testing::RandomModel(rng, mh, nu, 2 + rep % 3);
    for (int i = 0; i < mh; ++i) {
      const auto s = SolveGame(m, i);
      CHECK(s.value > 0.0);
      CHECK(VerifyMinimax(s, 1e-8).pass);
      CHECK(std::abs(s.maxmin_value - s.value) < 1e-9);
      if (mh - 1 <= 3) {
        CHECK(std::abs(testing::GridMaxMin(s.payoff, 0.01) - s.value) < 2e-3);
        CHECK(std::abs(testing::GridMinMax(s.payoff, 0.01) - s.value) < 2e-3);
      }
    }
  }
}

}  // namespace
}  // namespace aht
