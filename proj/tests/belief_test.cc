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
#include <sstream>

#include "aht/belief.h"
#include "aht/game.h"
#include "aht/montecarlo.h"
#include "aht/numeric.h"
#include "aht/strategy.h"
#include "test_util.h"

namespace aht {
namespace {

using testing::frozen::kLlrBoundTable1;

Belief B(std::vector<double> p) { return Belief::FromProbabilities(p); }

TEST_CASE("bayes update examples") {
  const auto m = testing::Table1();
  const auto b = UpdateBelief(Belief::Prior(m), m, 0, 1);
  CHECK(b.prob(0) == doctest::Approx(2.0 / 7).epsilon(1e-14));
  CHECK(b.prob(1) == doctest::Approx(3.0 / 7).epsilon(1e-14));
  CHECK(b.prob(2) == doctest::Approx(2.0 / 7).epsilon(1e-14));
  CHECK(std::abs(LogSumExp(b.log_probs())) < 1e-12);

  const auto r = B({0.2, 0.3, 0.5});
  const auto r2 = UpdateBelief(r, m, 0, 0);
  CHECK(r2.prob(0) / r2.prob(2) == doctest::Approx(0.2 / 0.5));
  CHECK_THROWS_AS(UpdateBelief(r, m, 0, 2), ModelError);

  const auto flat = LoadModel(R"({"hypotheses": ["a", "b", "c"],
      "experiments": ["U"], "observations": ["0", "1"],
      "prior": [0.2, 0.3, 0.5],
      "kernel": {"U": {"a": [0.3, 0.7], "b": [0.3, 0.7], "c": [0.3, 0.7]}}})");
  const auto same = UpdateBelief(Belief::Prior(flat), flat, 0, 1);
  for (int k = 0; k < 3; ++k) {
    CHECK(same.prob(k) == doctest::Approx(flat.prior()[k]).epsilon(1e-14));
  }
}

TEST_CASE("confidence examples") {
  CHECK(Confidence(Belief::Uniform(3), 2) ==
        doctest::Approx(-std::log(2.0)).epsilon(1e-14));
  CHECK(std::abs(Confidence(B({0.5, 0.25, 0.25}), 0)) < 1e-15);
  CHECK(Confidence(B({2.0 / 7, 3.0 / 7, 2.0 / 7}), 1) ==
        doctest::Approx(testing::frozen::kLnThreeQuarters).epsilon(1e-13));
  CHECK_THROWS_AS(Confidence(B({1.0, 0.0, 0.0}), 0), BeliefError);
  CHECK_THROWS_AS(Confidence(B({0.0, 0.5, 0.5}), 0), BeliefError);
}

TEST_CASE("tilde belief examples") {
  const auto t = TildeBelief(Belief::Uniform(3), 0);
  CHECK(t[0] == doctest::Approx(0.5));
  CHECK(t[1] == doctest::Approx(0.5));
  const auto t2 = TildeBelief(B({2.0 / 7, 3.0 / 7, 2.0 / 7}), 0);
  CHECK(t2[0] == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(t2[1] == doctest::Approx(0.4).epsilon(1e-14));
  const auto t3 = TildeBelief(B({0.3, 0.7}), 0);
  CHECK(t3.size() == 1);
  CHECK(t3[0] == doctest::Approx(1.0));
  CHECK_THROWS_AS(TildeBelief(B({1.0, 0.0}), 0), BeliefError);
}

TEST_CASE("trajectory steps") {
  const auto m = testing::Table1();
  Trajectory t(m, 0);
  CHECK(t.ConfidenceIncrement() == 0.0);
  t.Step(0, 1);
  CHECK(t.z()[0] == doctest::Approx(-kLlrBoundTable1).epsilon(1e-13));
  CHECK(t.z()[1] == 0.0);
  CHECK(t.z_of(1) == t.z()[0]);
  CHECK_THROWS_AS(t.z_of(0), BeliefError);
  CHECK(t.ConfidenceIncrement() ==
        doctest::Approx(testing::frozen::kOneStepIncrement).epsilon(1e-13));
  CHECK(t.DirectConfidenceIncrement() ==
        doctest::Approx(testing::frozen::kOneStepIncrement).epsilon(1e-13));
  t.Step(0, 0);
  CHECK(std::abs(t.z()[0]) < 1e-15);
  CHECK(t.steps() == 2);
  CHECK_THROWS_AS(t.Step(1, 3), ModelError);
  CHECK(t.ConsistencyError() < 1e-12);
  CHECK_FALSE(t.z_bar().has_value());
}

TEST_CASE("two hypotheses: the increment is the single z") {
  std::mt19937_64 rng(3);
  const auto m = testing::RandomModel(rng, 2, 2, 3);
  Trajectory t(m, 1);
  t.Step(0, 2);
  t.Step(1, 0);
  CHECK(t.ConfidenceIncrement() == doctest::Approx(t.z()[0]).epsilon(1e-12));
}

TEST_CASE("decomposition examples") {
  const auto m = testing::Table1();
  Trajectory t(m, 0, std::vector<double>{0.5, 0.5});
  const double half[] = {0.5, 0.5};
  auto d0 = Decompose(t, half);
  CHECK(d0.cross_entropy_end == d0.cross_entropy_start);
  t.Step(0, 1);
  const auto d = Decompose(t, half);
  CHECK(-d.cross_entropy_end + d.z_bar + d.cross_entropy_start ==
        doctest::Approx(t.DirectConfidenceIncrement()).epsilon(1e-12));
  CHECK(d.z_bar == *t.z_bar());
  const double point[] = {0.0, 1.0};
  CHECK(Decompose(t, point).z_bar == t.z()[1]);
  const double bad[] = {0.7, 0.7};
  CHECK_THROWS_AS(Decompose(t, bad), BeliefError);
}

// The identity checks of the acceptance suite, at a smaller scale.
TEST_CASE("increment, decomposition and softmax identities") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 200; ++rep) {
    const int mh = 2 + rep % 4;
    const auto m = testing::RandomModel(rng, mh, 1 + rep % 3, 2 + rep % 3);
    const int i = rep % mh;
    std::vector<double> beta(mh - 1);
    double s = 0.0;
    for (double& b : beta) s += b = 0.1 + (rng() % 100) / 100.0;
    for (double& b : beta) b /= s;
    Trajectory t(m, i, beta);
    const auto tilde1 = LogTildeBelief(t.prior(), i);
    const int len = 1 + rep % 50;
    std::vector<std::pair<int, int>> obs;
    for (int n = 0; n < len; ++n) {
      const int u = rng() % m.num_experiments();
      const int y = rng() % m.num_observations();
      t.Step(u, y);
      obs.push_back({u, y});
    }
    const auto naive = testing::NaivePosterior(m, obs);
    for (int k = 0; k < mh; ++k) {
      CHECK(std::abs(t.belief().prob(k) - naive[k]) < 1e-10);
    }
    CHECK(std::abs(t.ConfidenceIncrement() - t.DirectConfidenceIncrement()) <
          1e-9);
    const auto d = Decompose(t, beta);
    CHECK(d.cross_entropy_end >= 0.0);
    CHECK(std::abs(-d.cross_entropy_end + d.z_bar + d.cross_entropy_start -
                   t.DirectConfidenceIncrement()) < 1e-9);
    const auto tilde = TildeBelief(t.belief(), i);
    for (double sv : {1.0, 0.5}) {
      std::vector<double> logits(mh - 1);
      for (int a = 0; a < mh - 1; ++a) {
        logits[a] = sv * (tilde1[a] - t.z()[a]);
      }
      const double norm = LogSumExp(logits);
      double tilted_norm = 0.0;
      for (double v : tilde) tilted_norm += std::pow(v, sv);
      for (int a = 0; a < mh - 1; ++a) {
        CHECK(std::abs(std::exp(logits[a] - norm) -
                       std::pow(tilde[a], sv) / tilted_norm) < 1e-9);
      }
    }
    CHECK(t.ConsistencyError() < 1e-10);
  }
}

TEST_CASE("increment is the log likelihood ratio against the mixture") {
  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 20; ++rep) {
    const auto m = testing::RandomModel(rng, 2 + rep % 3, 1 + rep % 3,
                                        2 + rep % 2);
    const int i = rep % m.num_hypotheses();
    const auto game = SolveGame(m, i);
    const auto spec = MakeStrategy(StrategyKind::kDas, m, game, 0.5);
    const Policy das = [&](const Belief& b) {
      Rng unused(0);
      return SelectExperiment(spec, m, b, unused);
    };
    const auto tilde1 = LogTildeBelief(Belief::Prior(m), i);
    const auto alts = Alternates(m.num_hypotheses(), i);
    int leaves = 0;
    EnumeratePaths(m, das, 1 + rep % 5, i, std::nullopt,
                   [&](const Trajectory& t, std::span<const double> lp) {
                     std::vector<double> q;
                     for (std::size_t a = 0; a < alts.size(); ++a) {
                       q.push_back(tilde1[a] + lp[alts[a]]);
                     }
                     CHECK(std::abs(t.ConfidenceIncrement() -
                                    (lp[i] - LogSumExp(q))) < 1e-10);
                     ++leaves;
                   });
    CHECK(leaves > 0);
  }
}

TEST_CASE("trajectory dump") {
  const auto m = testing::Table1();
  Trajectory t(m, 0);
  t.Step(0, 1);
  t.Step(1, 0);
  std::ostringstream os;
  WriteTrajectoryDump(os, t);
  const std::string s = os.str();
  CHECK(s.rfind("step,experiment,observation,confidence,z_1,z_2\n", 0) == 0);
  CHECK(s.find("1,A,1,") != std::string::npos);
  CHECK(s.find("2,B,0,") != std::string::npos);
}

}  // namespace
}  // namespace aht
