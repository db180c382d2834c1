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

#include "aht/inference.h"

#include <algorithm>
#include <cmath>

#include "aht/strategy.h"

namespace aht {

InferenceRule AsymmetricRule(int num_hypotheses, int i, double theta,
                             double epsilon, InferenceKind kind) {
  if (i < 0 || i >= num_hypotheses) {
    throw InferenceError("reference hypothesis out of range");
  }
  InferenceRule rule;
  rule.kind = kind;
  rule.thresholds.assign(num_hypotheses, std::nullopt);
  rule.thresholds[i] = theta;
  rule.epsilon = epsilon;
  return rule;
}

InferenceRule SymmetricRule(std::vector<double> thresholds, double epsilon) {
  InferenceRule rule;
  rule.kind = InferenceKind::kSymmetricThreshold;
  rule.thresholds.assign(thresholds.begin(), thresholds.end());
  rule.epsilon = epsilon;
  return rule;
}

int InferFromIncrements(std::span<const double> increments,
                        const InferenceRule& rule) {
  if (increments.size() != rule.thresholds.size()) {
    throw InferenceError("one increment per hypothesis is required");
  }
  int decision = kInconclusive;
  for (std::size_t k = 0; k < rule.thresholds.size(); ++k) {
    if (!rule.thresholds[k] || !(increments[k] >= *rule.thresholds[k])) {
      continue;
    }
    if (decision != kInconclusive) {
      throw InferenceError("hypotheses " + std::to_string(decision) + " and " +
                           std::to_string(k) +
                           " both clear their thresholds");
    }
    decision = static_cast<int>(k);
  }
  return decision;
}

int Infer(const Belief& final_belief, const Belief& prior,
          const InferenceRule& rule) {
  std::vector<double> inc(rule.thresholds.size(), kNaN);
  for (std::size_t k = 0; k < inc.size(); ++k) {
    if (rule.thresholds[k]) {
      inc[k] = Confidence(final_belief, static_cast<int>(k)) -
               Confidence(prior, static_cast<int>(k));
    }
  }
  return InferFromIncrements(inc, rule);
}

double EpsilonSchedule(int horizon) {
  if (horizon <= 0) return 0.05;
  return std::min(0.05, 10.0 / horizon);
}

double ThresholdAsymmetric(int horizon, const GameSolution& game,
                           double epsilon, int num_hypotheses,
                           double llr_bound) {
  const double s =
      SScheduleValue(horizon, num_hypotheses, epsilon, llr_bound);
  const double n = horizon;
  return n * game.value - s * n * llr_bound * llr_bound / 2.0 -
         std::log(num_hypotheses / epsilon) / s;
}

double ThresholdSymmetric(int horizon, const GameSolution& game,
                          double epsilon, int num_hypotheses,
                          double llr_bound, int n_prime, double zeta,
                          const Belief& prior) {
  if (n_prime < 1 || n_prime > horizon) {
    throw InferenceError("N' must lie in [1, N]");
  }
  if (!(zeta > 0.0)) throw InferenceError("zeta must be positive");
  const double s =
      SScheduleValue(horizon, num_hypotheses, epsilon, llr_bound);
  const double n2 = horizon - n_prime + 1;
  const double clamp = zeta - Confidence(prior, game.reference);
  const double branch = n2 * game.value - s * n2 * llr_bound * llr_bound / 2.0 -
                        std::log(2.0 * num_hypotheses / epsilon) / s;
  return std::max(clamp, branch);
}

int DefaultNPrime(int horizon) {
  return std::max(1, static_cast<int>(std::ceil(std::sqrt(
                         static_cast<double>(horizon)))));
}

int NPrimeFromConstants(double epsilon, double b, double k) {
  if (!(b > 0.0) || !(k > 0.0)) {
    throw InferenceError("b and K must be positive");
  }
  const double v = std::ceil(-std::log(epsilon / (2.0 * k)) / b);
  return std::max(1, static_cast<int>(v));
}

std::string DecisionName(int decision) {
  return decision == kInconclusive ? "inconclusive" : std::to_string(decision);
}

}  // namespace aht
