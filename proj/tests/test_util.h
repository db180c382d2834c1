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

// Shared fixtures and independent reference computations for the tests.
// Nothing here calls into the library's numerics beyond model construction.

#ifndef AHT_TESTS_TEST_UTIL_H_
#define AHT_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "aht/builtin_models.h"
#include "aht/model.h"

namespace aht::testing {

// Values computed offline with an independent high-precision script.
namespace frozen {
inline constexpr double kLlrBoundTable1 = 0.405465108108164;      // ln 1.5
inline constexpr double kKlBern64 = 0.0810930216216329;           // 0.2 ln 1.5
inline constexpr double kDStarTable1 = 0.0405465108108164;        // 0.1 ln 1.5
inline constexpr double kDStarTable2 = 0.0561012718181206;
inline constexpr double kLlrBoundTable2 = 0.758801150781382;
inline constexpr double kS500 = 0.349158729770450;
inline constexpr double kTheta500 = -8.42793329115068;
inline constexpr double kPenalty500 = 14.3505943482794;
inline constexpr double kWeak500 = 0.0442031627888329;
inline constexpr double kMuHalf = 0.979795897113271;              // 2 sqrt(.24)
inline constexpr double kOneStepIncrement = -0.22314355131421;    // ln 0.8
inline constexpr double kLnThreeQuarters = -0.287682072451781;
// Table-2 payoff, reference 0, columns (1, 2).
inline constexpr double kPayoffC1 = 0.0778391784049957;
inline constexpr double kPayoffC2 = 0.0343633652312455;

struct QuantileCase {
  int n;
  double eps;
  int quantile;  // Bin(n, 0.6) quantile at 2 eps
  double strong;
};
inline constexpr QuantileCase kQuantiles[] = {
    {500, 0.02, 281, 17.1745885373412},
    {100, 0.05, 54, 5.3107398865466},
    {200, 0.05, 111, 8.1489956433037},
    {300, 1.0 / 30.0, 167, 10.9872514000609},
    {400, 0.025, 224, 14.1131892292698},
};
}  // namespace frozen

inline HypothesisModel Table1() { return ResolveModel("table1"); }
inline HypothesisModel Table2() { return ResolveModel("table2"); }

inline std::vector<std::string> Names(const std::string& prefix, int n) {
  std::vector<std::string> out;
  for (int k = 0; k < n; ++k) out.push_back(prefix + std::to_string(k));
  return out;
}

// Kernel entries uniform on [0.1, 1], rows normalized; random full-support
// prior. Every pair of hypotheses is then distinguishable almost surely.
inline HypothesisModel RandomModel(std::mt19937_64& rng, int m, int nu,
                                   int ny) {
  std::uniform_real_distribution<double> unif(0.1, 1.0);
  Kernel k(m, std::vector<std::vector<double>>(nu, std::vector<double>(ny)));
  for (int i = 0; i < m; ++i) {
    for (int u = 0; u < nu; ++u) {
      double sum = 0.0;
      for (int y = 0; y < ny; ++y) sum += k[i][u][y] = unif(rng);
      for (int y = 0; y < ny; ++y) k[i][u][y] /= sum;
      // Make the last entry absorb rounding so rows sum to 1 tightly.
      double head = 0.0;
      for (int y = 0; y + 1 < ny; ++y) head += k[i][u][y];
      k[i][u][ny - 1] = 1.0 - head;
    }
  }
  std::vector<double> prior(m);
  double sum = 0.0;
  for (double& p : prior) sum += p = unif(rng);
  for (double& p : prior) p /= sum;
  double head = 0.0;
  for (int i = 0; i + 1 < m; ++i) head += prior[i];
  prior[m - 1] = 1.0 - head;
  return HypothesisModel::Create(Names("h", m), Names("u", nu), Names("y", ny),
                                 k, prior);
}

// Plain (linear-space) Bayes posterior after a list of (u, y) observations.
inline std::vector<double> NaivePosterior(
    const HypothesisModel& m, const std::vector<std::pair<int, int>>& obs) {
  std::vector<double> p(m.prior().begin(), m.prior().end());
  for (auto [u, y] : obs) {
    double z = 0.0;
    for (int k = 0; k < m.num_hypotheses(); ++k) z += p[k] *= m.prob(k, u, y);
    for (double& v : p) v /= z;
  }
  return p;
}

// Brute-force value of max_alpha min_j (alpha' A)_j over a grid on the
// simplex with the given step. Exact for 1 row.
inline double GridMaxMin(const std::vector<std::vector<double>>& a,
                         double step) {
  const int rows = static_cast<int>(a.size());
  const int cols = static_cast<int>(a[0].size());
  const int n = static_cast<int>(std::lround(1.0 / step));
  double best = -1e300;
  auto eval = [&](const std::vector<double>& alpha) {
    double v = 1e300;
    for (int j = 0; j < cols; ++j) {
      double s = 0.0;
      for (int u = 0; u < rows; ++u) s += alpha[u] * a[u][j];
      v = std::min(v, s);
    }
    best = std::max(best, v);
  };
  if (rows == 1) {
    eval({1.0});
  } else if (rows == 2) {
    for (int k = 0; k <= n; ++k) eval({k / double(n), 1.0 - k / double(n)});
  } else {
    for (int k1 = 0; k1 <= n; ++k1) {
      for (int k2 = 0; k1 + k2 <= n; ++k2) {
        eval({k1 / double(n), k2 / double(n), (n - k1 - k2) / double(n)});
      }
    }
  }
  return best;
}

// Brute-force min_beta max_u (A beta)_u on the same kind of grid.
inline double GridMinMax(const std::vector<std::vector<double>>& a,
                         double step) {
  std::vector<std::vector<double>> t(a[0].size(),
                                     std::vector<double>(a.size()));
  for (std::size_t u = 0; u < a.size(); ++u) {
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][u] = -a[u][j];
  }
  return -GridMaxMin(t, step);
}

// Binomial CDF by multiplying out the pmf recurrence in extended precision,
// whose range covers (1 - p)^n for every case the tests use.
inline double NaiveBinomialCdf(int n, double p, int k) {
  long double pmf = std::pow(1.0L - p, static_cast<long double>(n));
  long double cdf = 0.0L;
  for (int j = 0; j <= k; ++j) {
    cdf += pmf;
    pmf *= (n - j) / static_cast<long double>(j + 1) * p / (1.0L - p);
  }
  return static_cast<double>(cdf);
}

}  // namespace aht::testing

#endif  // AHT_TESTS_TEST_UTIL_H_
