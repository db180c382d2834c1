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

#include "aht/game.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aht/belief.h"
#include "aht/numeric.h"
#include "aht/simplex.h"

namespace aht {
namespace {

std::vector<double> Normalize(std::vector<double> v) {
  double sum = 0.0;
  for (double& x : v) {
    if (x < 0.0) x = 0.0;
    sum += x;
  }
  for (double& x : v) x /= sum;
  return v;
}

double MinOverColumns(std::span<const double> alpha, const Matrix& a) {
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  double best = kInf;
  for (std::size_t j = 0; j < cols; ++j) {
    double v = 0.0;
    for (std::size_t u = 0; u < a.size(); ++u) v += alpha[u] * a[u][j];
    best = std::min(best, v);
  }
  return best;
}

double MaxOverRows(std::span<const double> beta, const Matrix& a) {
  double best = -kInf;
  for (const auto& row : a) {
    double v = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) v += row[j] * beta[j];
    best = std::max(best, v);
  }
  return best;
}

}  // namespace

MatrixGameSolution SolveMatrixGame(const Matrix& payoff) {
  const int rows = static_cast<int>(payoff.size());
  if (rows == 0 || payoff[0].empty()) {
    throw GameError("payoff matrix must be nonempty");
  }
  const int cols = static_cast<int>(payoff[0].size());
  double hi = 0.0;
  for (const auto& row : payoff) {
    if (static_cast<int>(row.size()) != cols) {
      throw GameError("payoff matrix is ragged");
    }
    for (double v : row) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw GameError("payoff entries must be finite and nonnegative");
      }
      hi = std::max(hi, v);
    }
  }

  // Shifting by one makes every entry positive, so both players' LPs take
  // the form max 1'y s.t. P y <= 1, y >= 0 with a feasible origin.
  // Column player: P = A + 1, beta = y / sum(y), value + 1 = 1 / sum(y).
  Matrix p(rows, std::vector<double>(cols));
  for (int u = 0; u < rows; ++u) {
    for (int j = 0; j < cols; ++j) p[u][j] = payoff[u][j] + 1.0;
  }
  const LpResult col = SolveLp(p, std::vector<double>(rows, 1.0),
                               std::vector<double>(cols, 1.0));
  // Row player: on C = K - (A + 1) the maximizer of A becomes a minimizer,
  // which is the column-player form on C'.
  const double k = hi + 2.0;
  Matrix q(cols, std::vector<double>(rows));
  for (int j = 0; j < cols; ++j) {
    for (int u = 0; u < rows; ++u) q[j][u] = k - p[u][j];
  }
  const LpResult row = SolveLp(q, std::vector<double>(cols, 1.0),
                               std::vector<double>(rows, 1.0));
  if (!col.optimal || !row.optimal || !(col.objective > 0.0) ||
      !(row.objective > 0.0)) {
    throw GameError("simplex failed on a bounded game");
  }

  MatrixGameSolution s;
  s.beta = Normalize(col.x);
  s.alpha = Normalize(row.x);
  s.value = 1.0 / col.objective - 1.0;
  s.maxmin_value = MinOverColumns(s.alpha, payoff);
  s.minmax_value = MaxOverRows(s.beta, payoff);
  return s;
}

Matrix PayoffMatrix(const HypothesisModel& model, int i) {
  if (i < 0 || i >= model.num_hypotheses()) {
    throw GameError("reference hypothesis out of range");
  }
  const auto alts = Alternates(model.num_hypotheses(), i);
  Matrix a(model.num_experiments(), std::vector<double>(alts.size()));
  for (int u = 0; u < model.num_experiments(); ++u) {
    for (std::size_t k = 0; k < alts.size(); ++k) {
      a[u][k] = KlDivergence(model, i, alts[k], u);
    }
  }
  return a;
}

double Payoff(std::span<const double> alpha, std::span<const double> beta,
              const Matrix& payoff) {
  if (alpha.size() != payoff.size()) {
    throw GameError("alpha does not match the payoff rows");
  }
  double total = 0.0;
  for (std::size_t u = 0; u < payoff.size(); ++u) {
    if (beta.size() != payoff[u].size()) {
      throw GameError("beta does not match the payoff columns");
    }
    for (std::size_t j = 0; j < beta.size(); ++j) {
      total += alpha[u] * payoff[u][j] * beta[j];
    }
  }
  return total;
}

GameSolution SolveGame(const HypothesisModel& model, int i) {
  GameSolution s;
  s.reference = i;
  s.payoff = PayoffMatrix(model, i);
  s.alternates = Alternates(model.num_hypotheses(), i);
  MatrixGameSolution m = SolveMatrixGame(s.payoff);
  s.value = m.value;
  s.alpha_star = std::move(m.alpha);
  s.beta_star = std::move(m.beta);
  s.maxmin_value = m.maxmin_value;
  s.minmax_value = m.minmax_value;
  if (s.value <= 1e-15) {
    s.value = std::max(s.value, 0.0);
    s.warnings.push_back("D*(" + std::to_string(i) +
                         ") = 0: some alternate is indistinguishable under "
                         "every experiment");
  }
  return s;
}

MinimaxReport VerifyMinimax(const GameSolution& s, double tol) {
  MinimaxReport r;
  if (!IsDistribution(s.alpha_star, 1e-10) ||
      !IsDistribution(s.beta_star, 1e-10) ||
      s.alpha_star.size() != s.payoff.size() ||
      (!s.payoff.empty() && s.beta_star.size() != s.payoff[0].size())) {
    r.message = "alpha_star or beta_star is not a distribution of the right size";
    r.maxmin = r.minmax = r.gap = kNaN;
    return r;
  }
  r.maxmin = MinOverColumns(s.alpha_star, s.payoff);
  r.minmax = MaxOverRows(s.beta_star, s.payoff);
  r.gap = std::abs(r.minmax - r.maxmin);
  r.pass = r.gap <= tol;
  std::ostringstream os;
  os << "duality gap " << FormatFloat(r.gap)
     << (r.pass ? " within " : " exceeds ") << FormatFloat(tol);
  r.message = os.str();
  return r;
}

}  // namespace aht
