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

#ifndef AHT_BOUNDS_H_
#define AHT_BOUNDS_H_

#include <optional>
#include <span>
#include <vector>

#include "aht/belief.h"
#include "aht/game.h"
#include "aht/model.h"

namespace aht {

// Upper bound on (1/N) ln(1/phi_N(i)) for any strategy meeting
// psi_N(i) >= 1 - eps:
//   (D*(i) + H(beta*, tilde_rho_1) / N + ln 2 / N) / (1 - eps).
double WeakConverse(const GameSolution& game, const Belief& prior, int horizon,
                    double epsilon);

// Rate bound on (1/N) ln(1/gamma_N) when every psi_N(i) >= 1 - eps, from
// gamma_N >= (1 - rho_1(i)) phi_N(i) for each i.
double WeakConverseSymmetric(const std::vector<GameSolution>& games,
                             const Belief& prior, int horizon, double epsilon);

// chi - ln(p - eps) with p the empirical P[Z_bar + h_start <= chi]; empty
// when p <= eps. Throws std::invalid_argument on empty samples.
std::optional<double> StrongConverseEmpirical(std::span<const double> zbar,
                                              double h_start, double chi,
                                              double epsilon);

struct StrongBound {
  double bound;
  double chi;
};

// Sweeps chi over the sample points of Z_bar + h_start and keeps the
// smallest finite bound.
std::optional<StrongBound> TightestStrongConverse(
    std::span<const double> zbar, double h_start, double epsilon);

double BinomialLogPmf(int n, double p, int k);
double BinomialCdf(int n, double p, int k);
// Smallest k with CDF(k) >= q.
int BinomialQuantile(int n, double p, double q);

// Closed-form bound on ln(1/phi_N(0)) for the two-sensor family:
//   chi* = (Q(2 eps) - N/2) ln(nu / (1 - nu)) + ln 2, bound = chi* - ln eps,
// with Q the Bin(N, nu) quantile.
double StrongBoundBinaryExample(int horizon, double nu, double epsilon);

struct BoundsRow {
  int horizon;
  double epsilon;
  double weak_rate;
  double strong_nats;  // nan when no closed form applies
  double strong_db;
  double d_star;
};

// eps <= 0 selects the default schedule per N.
std::vector<BoundsRow> BoundsTable(const HypothesisModel& model,
                                   const GameSolution& game,
                                   std::span<const int> horizons,
                                   double epsilon);

}  // namespace aht

#endif  // AHT_BOUNDS_H_
