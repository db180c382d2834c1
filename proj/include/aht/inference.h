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

#ifndef AHT_INFERENCE_H_
#define AHT_INFERENCE_H_

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aht/belief.h"
#include "aht/game.h"

namespace aht {

class InferenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The abstain declaration.
inline constexpr int kInconclusive = -1;

enum class InferenceKind {
  kAsymmetricThreshold,
  kSymmetricThreshold,
  kEmpiricalThreshold,
};

struct InferenceRule {
  InferenceKind kind = InferenceKind::kAsymmetricThreshold;
  // One entry per hypothesis; empty entries are out of scope.
  std::vector<std::optional<double>> thresholds;
  double epsilon = 0.05;
};

// Declares i when C_i(rho_{N+1}) - C_i(rho_1) >= theta.
InferenceRule AsymmetricRule(int num_hypotheses, int i, double theta,
                             double epsilon,
                             InferenceKind kind =
                                 InferenceKind::kAsymmetricThreshold);

InferenceRule SymmetricRule(std::vector<double> thresholds, double epsilon);

// `increments[k]` is C_k(rho_{N+1}) - C_k(rho_1); entries for hypotheses
// without a threshold are ignored. Throws InferenceError if two hypotheses
// clear their thresholds.
int InferFromIncrements(std::span<const double> increments,
                        const InferenceRule& rule);
int Infer(const Belief& final_belief, const Belief& prior,
          const InferenceRule& rule);

// eps_N = min{0.05, 10 / N}.
double EpsilonSchedule(int horizon);

// theta_N = N D* - s_N N B^2 / 2 - ln(M / eps) / s_N.
double ThresholdAsymmetric(int horizon, const GameSolution& game,
                           double epsilon, int num_hypotheses,
                           double llr_bound);

// theta_N(i) = max{zeta - C_i(rho_1),
//                  N'' D* - s_N N'' B^2 / 2 - ln(2M / eps) / s_N}
// with N'' = N - n_prime + 1.
double ThresholdSymmetric(int horizon, const GameSolution& game,
                          double epsilon, int num_hypotheses,
                          double llr_bound, int n_prime, double zeta,
                          const Belief& prior);

// ceil(sqrt(N)).
int DefaultNPrime(int horizon);
// ceil(-(1/b) ln(eps / (2K))), at least 1.
int NPrimeFromConstants(double epsilon, double b, double k);

std::string DecisionName(int decision);

}  // namespace aht

#endif  // AHT_INFERENCE_H_
