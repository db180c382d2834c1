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

#ifndef AHT_GAME_H_
#define AHT_GAME_H_

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "aht/model.h"

namespace aht {

class GameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Matrix = std::vector<std::vector<double>>;

struct MatrixGameSolution {
  double value = 0.0;
  std::vector<double> alpha;  // row player (maximizer)
  std::vector<double> beta;   // column player (minimizer)
  double maxmin_value = 0.0;  // min_j (alpha' A)_j
  double minmax_value = 0.0;  // max_u (A beta)_u
};

// Solves max_alpha min_beta alpha' A beta for a nonnegative matrix by two
// independent simplex runs, one per player.
MatrixGameSolution SolveMatrixGame(const Matrix& payoff);

struct GameSolution {
  int reference = 0;
  double value = 0.0;               // D*(i), nats
  std::vector<double> alpha_star;   // over experiments
  std::vector<double> beta_star;    // over alternates()
  std::vector<int> alternates;
  Matrix payoff;                    // payoff[u][a] = D(p_i^u || p_j^u)
  double maxmin_value = 0.0;
  double minmax_value = 0.0;
  std::vector<std::string> warnings;
};

Matrix PayoffMatrix(const HypothesisModel& model, int i);

// sum_u sum_a alpha(u) payoff[u][a] beta(a).
double Payoff(std::span<const double> alpha, std::span<const double> beta,
              const Matrix& payoff);

GameSolution SolveGame(const HypothesisModel& model, int i);

struct MinimaxReport {
  double maxmin = 0.0;
  double minmax = 0.0;
  double gap = 0.0;
  bool pass = false;
  std::string message;
};

// Recomputes both one-sided values from alpha_star and beta_star.
MinimaxReport VerifyMinimax(const GameSolution& s, double tol);

}  // namespace aht

#endif  // AHT_GAME_H_
