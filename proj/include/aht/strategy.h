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

#ifndef AHT_STRATEGY_H_
#define AHT_STRATEGY_H_

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aht/belief.h"
#include "aht/game.h"
#include "aht/model.h"
#include "aht/numeric.h"

namespace aht {

enum class StrategyKind {
  kOrs,
  kDas,
  kDasRs,
  kChernoffDet,
  kSymmetricComposite,
};

// Accepts the CLI spellings: ors, das, das-rs, chernoff-det, symmetric.
StrategyKind ParseStrategyKind(std::string_view name);
std::string StrategyKindName(StrategyKind kind);

// s_N = min{1, sqrt(2 ln(M / eps) / (N B^2))}; 1 when B = 0.
double SScheduleValue(int horizon, int num_hypotheses, double epsilon,
                      double llr_bound);

// mu_j^i(u, s) = sum_y p_i^u(y)^(1-s) p_j^u(y)^s.
double Mgf(const HypothesisModel& model, int i, int j, int u, double s);
// d/ds mu_j^i(u, s).
double MgfSlope(const HypothesisModel& model, int i, int j, int u, double s);

// M_i(u, rho, s): the rho(j)^s weighted average of mu_j^i(u, s) over j != i.
double ScoreM(const HypothesisModel& model, int i, int u, const Belief& belief,
              double s);

struct StrategySpec {
  StrategyKind kind = StrategyKind::kOrs;
  int reference = -1;  // -1 for the symmetric composite
  double s_value = 1.0;
  std::shared_ptr<const GameSolution> game;

  // Experiments DAS and DAS-RS minimize over, ascending.
  std::vector<int> candidates;
  // mu[u][a] = mu_j^i(u, s_value) for the a-th alternate, and its
  // derivative in s.
  std::vector<std::vector<double>> mu;
  std::vector<std::vector<double>> mu_slope;
  // Chernoff: the experiment maximizing D(p_i^u || p_j^u), per alternate.
  std::vector<int> chernoff_choice;
  // Symmetric composite: one asymmetric spec per hypothesis.
  std::vector<StrategySpec> inner;
};

StrategySpec MakeStrategy(StrategyKind kind, const HypothesisModel& model,
                          const GameSolution& game, double s_value);

// Throws ModelError when some pair of hypotheses is indistinguishable under
// an experiment, unless `allow_indistinguishable` is set.
StrategySpec MakeSymmetricStrategy(StrategyKind inner_kind,
                                   const HypothesisModel& model,
                                   const std::vector<GameSolution>& games,
                                   double s_value,
                                   bool allow_indistinguishable = false);

// The ML estimate under the uniform-prior posterior, lowest index on ties.
// That posterior is proportional to rho(k) / rho_1(k).
int UniformPriorArgmax(const HypothesisModel& model, const Belief& belief);

// DAS and DAS-RS take the argmin of M_i(u, rho, s). Exact ties, which occur
// at s = 1 where every mu equals 1, go to the experiment that wins for s
// slightly below s_value; remaining ties go to the lowest index.
// Only ORS with more than one supported experiment consumes `rng`.
int SelectExperiment(const StrategySpec& spec, const HypothesisModel& model,
                     const Belief& belief, Rng& rng);

// The control law g_n(rho) as a distribution over experiments.
std::vector<double> SelectionDistribution(const StrategySpec& spec,
                                          const HypothesisModel& model,
                                          const Belief& belief);

bool IsDeterministic(const StrategySpec& spec);

bool CriterionHolds(std::span<const double> alpha_n, const Belief& belief,
                    double s, const GameSolution& game,
                    const HypothesisModel& model, int i);

}  // namespace aht

#endif  // AHT_STRATEGY_H_
