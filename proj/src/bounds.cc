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

#include "aht/bounds.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aht/builtin_models.h"
#include "aht/inference.h"
#include "aht/numeric.h"

namespace aht {

double WeakConverse(const GameSolution& game, const Belief& prior, int horizon,
                    double epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("weak converse needs 0 <= eps < 1");
  }
  const auto tilde = TildeBelief(prior, game.reference);
  const double h = CrossEntropy(game.beta_star, tilde);
  const double n = horizon;
  return (game.value + h / n + std::log(2.0) / n) / (1.0 - epsilon);
}

double WeakConverseSymmetric(const std::vector<GameSolution>& games,
                             const Belief& prior, int horizon,
                             double epsilon) {
  double best = kInf;
  for (const auto& g : games) {
    const double off = -std::log1p(-prior.prob(g.reference)) / horizon;
    best = std::min(best, WeakConverse(g, prior, horizon, epsilon) + off);
  }
  return best;
}

std::optional<double> StrongConverseEmpirical(std::span<const double> zbar,
                                              double h_start, double chi,
                                              double epsilon) {
  if (zbar.empty()) throw std::invalid_argument("no Z_bar samples");
  std::size_t hits = 0;
  for (double z : zbar) {
    if (z + h_start <= chi) ++hits;
  }
  const double p = static_cast<double>(hits) / zbar.size();
  if (!(p > epsilon)) return std::nullopt;
  return chi - std::log(p - epsilon);
}

std::optional<StrongBound> TightestStrongConverse(
    std::span<const double> zbar, double h_start, double epsilon) {
  if (zbar.empty()) throw std::invalid_argument("no Z_bar samples");
  std::vector<double> v(zbar.begin(), zbar.end());
  for (double& x : v) x += h_start;
  std::sort(v.begin(), v.end());
  const double t = v.size();
  std::optional<StrongBound> best;
  for (std::size_t k = 0; k < v.size(); ++k) {
    // Only the last of a run of ties gives the full count at chi = v[k].
    if (k + 1 < v.size() && v[k + 1] == v[k]) continue;
    const double p = (k + 1) / t;
    if (!(p > epsilon)) continue;
    const double b = v[k] - std::log(p - epsilon);
    if (!best || b < best->bound) best = StrongBound{b, v[k]};
  }
  return best;
}

double BinomialLogPmf(int n, double p, int k) {
  if (k < 0 || k > n) return kNegInf;
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
         std::lgamma(n - k + 1.0) + k * std::log(p) +
         (n - k) * std::log1p(-p);
}

double BinomialCdf(int n, double p, int k) {
  if (k < 0) return 0.0;
  if (k >= n) return 1.0;
  double acc = kNegInf;
  for (int j = 0; j <= k; ++j) acc = LogSumExp(acc, BinomialLogPmf(n, p, j));
  return std::min(1.0, std::exp(acc));
}

int BinomialQuantile(int n, double p, double q) {
  if (!(p > 0.0 && p < 1.0) || !(q > 0.0 && q < 1.0) || n < 0) {
    throw std::invalid_argument("binomial quantile needs 0 < p, q < 1");
  }
  double acc = kNegInf;
  for (int k = 0; k < n; ++k) {
    acc = LogSumExp(acc, BinomialLogPmf(n, p, k));
    if (std::exp(acc) >= q) return k;
  }
  return n;
}

double StrongBoundBinaryExample(int horizon, double nu, double epsilon) {
  if (!(nu > 0.0 && nu < 1.0)) {
    throw std::invalid_argument("nu must lie in (0, 1)");
  }
  if (!(epsilon > 0.0 && 2.0 * epsilon < 1.0)) {
    throw std::invalid_argument("strong bound needs 0 < 2 eps < 1");
  }
  const int k = BinomialQuantile(horizon, nu, 2.0 * epsilon);
  const double chi =
      (k - horizon / 2.0) * std::log(nu / (1.0 - nu)) + std::log(2.0);
  return chi - std::log(epsilon);
}

std::vector<BoundsRow> BoundsTable(const HypothesisModel& model,
                                   const GameSolution& game,
                                   std::span<const int> horizons,
                                   double epsilon) {
  const Belief prior = Belief::Prior(model);
  const auto nu = BinaryAnomalyParameter(model);
  std::vector<BoundsRow> rows;
  for (int n : horizons) {
    BoundsRow r;
    r.horizon = n;
    r.epsilon = epsilon > 0.0 ? epsilon : EpsilonSchedule(n);
    r.weak_rate = WeakConverse(game, prior, n, r.epsilon);
    r.d_star = game.value;
    r.strong_nats = (nu && game.reference == 0)
                        ? StrongBoundBinaryExample(n, *nu, r.epsilon)
                        : kNaN;
    r.strong_db = NatsToDb(r.strong_nats);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace aht
