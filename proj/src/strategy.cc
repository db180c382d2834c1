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

#include "aht/strategy.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aht {
namespace {

constexpr double kSupportTol = 1e-12;
constexpr int kInlineAlternates = 16;

int LowestArgmax(std::span<const double> v) {
  int best = 0;
  for (int k = 1; k < static_cast<int>(v.size()); ++k) {
    if (v[k] > v[best]) best = k;
  }
  return best;
}

// Fills w[a] = (rho(j_a) / max_j rho(j))^s over the alternates.
void TiltedWeights(const std::vector<int>& alts, const Belief& belief,
                   double s, double* w) {
  double m = kNegInf;
  for (int j : alts) m = std::max(m, belief.log_prob(j));
  if (m == kNegInf) {
    throw std::domain_error("alternates carry no belief mass");
  }
  for (std::size_t a = 0; a < alts.size(); ++a) {
    w[a] = std::exp(s * (belief.log_prob(alts[a]) - m));
  }
}

int ArgminScore(const StrategySpec& spec, const Belief& belief) {
  const auto& alts = spec.game->alternates;
  double inline_w[kInlineAlternates];
  std::vector<double> heap_w;
  double* w = inline_w;
  if (alts.size() > kInlineAlternates) {
    heap_w.resize(alts.size());
    w = heap_w.data();
  }
  TiltedWeights(alts, belief, spec.s_value, w);
  // d/ds of sum_a rho(j_a)^s mu_a(u, s), up to terms shared by every u.
  auto slope = [&](int u) {
    double m = kNegInf;
    for (int j : alts) m = std::max(m, belief.log_prob(j));
    double d = 0.0;
    for (std::size_t a = 0; a < alts.size(); ++a) {
      d += w[a] * ((belief.log_prob(alts[a]) - m) * spec.mu[u][a] +
                   spec.mu_slope[u][a]);
    }
    return d;
  };
  int best = -1;
  double best_score = kInf;
  double best_slope = 0.0;
  bool have_slope = false;
  for (int u : spec.candidates) {
    const auto& mu = spec.mu[u];
    double score = 0.0;
    for (std::size_t a = 0; a < alts.size(); ++a) score += w[a] * mu[a];
    if (score < best_score) {
      best_score = score;
      best = u;
      have_slope = false;
    } else if (score == best_score) {
      if (!have_slope) {
        best_slope = slope(best);
        have_slope = true;
      }
      const double d = slope(u);
      if (d > best_slope) {
        best = u;
        best_slope = d;
      }
    }
  }
  return best;
}

int ChernoffChoice(const StrategySpec& spec, const HypothesisModel& model,
                   const Belief& belief) {
  const auto& alts = spec.game->alternates;
  const auto log_prior = model.log_prior();
  int best = 0;
  double best_v = kNegInf;
  for (std::size_t a = 0; a < alts.size(); ++a) {
    const double v = belief.log_prob(alts[a]) - log_prior[alts[a]];
    if (v > best_v) {
      best_v = v;
      best = static_cast<int>(a);
    }
  }
  return spec.chernoff_choice[best];
}

int SinglePointMass(std::span<const double> alpha) {
  int found = -1;
  for (int u = 0; u < static_cast<int>(alpha.size()); ++u) {
    if (alpha[u] > kSupportTol) {
      if (found >= 0) return -1;
      found = u;
    }
  }
  return found;
}

}  // namespace

StrategyKind ParseStrategyKind(std::string_view name) {
  if (name == "ors") return StrategyKind::kOrs;
  if (name == "das") return StrategyKind::kDas;
  if (name == "das-rs") return StrategyKind::kDasRs;
  if (name == "chernoff-det") return StrategyKind::kChernoffDet;
  if (name == "symmetric") return StrategyKind::kSymmetricComposite;
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

std::string StrategyKindName(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kOrs: return "ors";
    case StrategyKind::kDas: return "das";
    case StrategyKind::kDasRs: return "das-rs";
    case StrategyKind::kChernoffDet: return "chernoff-det";
    case StrategyKind::kSymmetricComposite: return "symmetric";
  }
  return "unknown";
}

double SScheduleValue(int horizon, int num_hypotheses, double epsilon,
                      double llr_bound) {
  if (llr_bound <= 0.0) return 1.0;
  const double v = std::sqrt(2.0 * std::log(num_hypotheses / epsilon) /
                             (horizon * llr_bound * llr_bound));
  return std::min(1.0, v);
}

double Mgf(const HypothesisModel& model, int i, int j, int u, double s) {
  double total = 0.0;
  for (int y : model.support(u)) {
    total += std::pow(model.prob(i, u, y), 1.0 - s) *
             std::pow(model.prob(j, u, y), s);
  }
  return total;
}

double MgfSlope(const HypothesisModel& model, int i, int j, int u, double s) {
  double total = 0.0;
  for (int y : model.support(u)) {
    total += std::pow(model.prob(i, u, y), 1.0 - s) *
             std::pow(model.prob(j, u, y), s) *
             (model.log_prob(j, u, y) - model.log_prob(i, u, y));
  }
  return total;
}

double ScoreM(const HypothesisModel& model, int i, int u, const Belief& belief,
              double s) {
  const auto alts = Alternates(model.num_hypotheses(), i);
  std::vector<double> w(alts.size());
  TiltedWeights(alts, belief, s, w.data());
  double num = 0.0, den = 0.0;
  for (std::size_t a = 0; a < alts.size(); ++a) {
    num += w[a] * Mgf(model, i, alts[a], u, s);
    den += w[a];
  }
  return num / den;
}

StrategySpec MakeStrategy(StrategyKind kind, const HypothesisModel& model,
                          const GameSolution& game, double s_value) {
  if (kind == StrategyKind::kSymmetricComposite) {
    throw std::invalid_argument("use MakeSymmetricStrategy");
  }
  if (!(s_value > 0.0 && s_value <= 1.0)) {
    throw std::invalid_argument("s must lie in (0, 1]");
  }
  StrategySpec spec;
  spec.kind = kind;
  spec.reference = game.reference;
  spec.s_value = s_value;
  spec.game = std::make_shared<GameSolution>(game);
  const int i = game.reference;
  const int num_u = model.num_experiments();
  for (int u = 0; u < num_u; ++u) {
    if (kind != StrategyKind::kDasRs || game.alpha_star[u] > kSupportTol) {
      spec.candidates.push_back(u);
    }
  }
  spec.mu.assign(num_u, std::vector<double>(game.alternates.size()));
  spec.mu_slope = spec.mu;
  for (int u = 0; u < num_u; ++u) {
    for (std::size_t a = 0; a < game.alternates.size(); ++a) {
      spec.mu[u][a] = Mgf(model, i, game.alternates[a], u, s_value);
      spec.mu_slope[u][a] = MgfSlope(model, i, game.alternates[a], u, s_value);
    }
  }
  for (std::size_t a = 0; a < game.alternates.size(); ++a) {
    std::vector<double> d(num_u);
    for (int u = 0; u < num_u; ++u) d[u] = game.payoff[u][a];
    spec.chernoff_choice.push_back(LowestArgmax(d));
  }
  return spec;
}

StrategySpec MakeSymmetricStrategy(StrategyKind inner_kind,
                                   const HypothesisModel& model,
                                   const std::vector<GameSolution>& games,
                                   double s_value,
                                   bool allow_indistinguishable) {
  if (inner_kind == StrategyKind::kSymmetricComposite) {
    throw std::invalid_argument("inner strategy cannot be symmetric");
  }
  if (static_cast<int>(games.size()) != model.num_hypotheses()) {
    throw std::invalid_argument("need one game solution per hypothesis");
  }
  if (!allow_indistinguishable) {
    const auto bad = DistinguishabilityViolations(model);
    if (!bad.empty()) {
      const auto& v = bad.front();
      throw ModelError(
          "pairwise distinguishability fails: D(p_" +
          model.hypothesis_names()[v.i] + "^" +
          model.experiment_names()[v.u] + " || p_" +
          model.hypothesis_names()[v.j] + "^" +
          model.experiment_names()[v.u] +
          ") = 0; the symmetric composite strategy requires every pair of "
          "hypotheses to be distinguishable under every experiment");
    }
  }
  StrategySpec spec;
  spec.kind = StrategyKind::kSymmetricComposite;
  spec.s_value = s_value;
  for (const auto& g : games) {
    if (g.value <= 0.0) {
      throw ModelError("symmetric runs need D*(i) > 0 for every i");
    }
    spec.inner.push_back(MakeStrategy(inner_kind, model, g, s_value));
  }
  return spec;
}

int UniformPriorArgmax(const HypothesisModel& model, const Belief& belief) {
  const auto log_prior = model.log_prior();
  int best = 0;
  double best_v = belief.log_prob(0) - log_prior[0];
  for (int k = 1; k < belief.size(); ++k) {
    const double v = belief.log_prob(k) - log_prior[k];
    if (v > best_v) {
      best_v = v;
      best = k;
    }
  }
  return best;
}

int SelectExperiment(const StrategySpec& spec, const HypothesisModel& model,
                     const Belief& belief, Rng& rng) {
  switch (spec.kind) {
    case StrategyKind::kOrs: {
      const auto& alpha = spec.game->alpha_star;
      const int only = SinglePointMass(alpha);
      return only >= 0 ? only : SampleIndex(alpha, rng);
    }
    case StrategyKind::kDas:
    case StrategyKind::kDasRs:
      return ArgminScore(spec, belief);
    case StrategyKind::kChernoffDet:
      return ChernoffChoice(spec, model, belief);
    case StrategyKind::kSymmetricComposite:
      return SelectExperiment(spec.inner[UniformPriorArgmax(model, belief)],
                              model, belief, rng);
  }
  return 0;
}

std::vector<double> SelectionDistribution(const StrategySpec& spec,
                                          const HypothesisModel& model,
                                          const Belief& belief) {
  if (spec.kind == StrategyKind::kSymmetricComposite) {
    return SelectionDistribution(spec.inner[UniformPriorArgmax(model, belief)],
                                 model, belief);
  }
  if (spec.kind == StrategyKind::kOrs) return spec.game->alpha_star;
  std::vector<double> out(model.num_experiments(), 0.0);
  Rng unused(0);
  out[SelectExperiment(spec, model, belief, unused)] = 1.0;
  return out;
}

bool IsDeterministic(const StrategySpec& spec) {
  switch (spec.kind) {
    case StrategyKind::kOrs:
      return SinglePointMass(spec.game->alpha_star) >= 0;
    case StrategyKind::kSymmetricComposite:
      return std::all_of(spec.inner.begin(), spec.inner.end(),
                         [](const StrategySpec& s) {
                           return IsDeterministic(s);
                         });
    default:
      return true;
  }
}

bool CriterionHolds(std::span<const double> alpha_n, const Belief& belief,
                    double s, const GameSolution& game,
                    const HypothesisModel& model, int i) {
  double lhs = 0.0, rhs = 0.0;
  for (int u = 0; u < model.num_experiments(); ++u) {
    const double m = ScoreM(model, i, u, belief, s);
    lhs += alpha_n[u] * m;
    rhs += game.alpha_star[u] * m;
  }
  return lhs <= rhs + 1e-12;
}

}  // namespace aht
