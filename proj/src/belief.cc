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

#include "aht/belief.h"

#include <algorithm>
#include <cmath>

#include "aht/numeric.h"

namespace aht {

Belief Belief::FromProbabilities(std::span<const double> p) {
  std::vector<double> log_p(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (!(p[k] >= 0.0) || !std::isfinite(p[k])) {
      throw BeliefError("belief entries must be finite and nonnegative");
    }
    log_p[k] = p[k] > 0.0 ? std::log(p[k]) : kNegInf;
  }
  return FromLogProbabilities(std::move(log_p));
}

Belief Belief::FromLogProbabilities(std::vector<double> log_p) {
  const double norm = LogSumExp(log_p);
  if (!std::isfinite(norm)) {
    throw BeliefError("belief has no finite mass");
  }
  for (double& v : log_p) v -= norm;
  return Belief(std::move(log_p));
}

Belief Belief::Uniform(int num_hypotheses) {
  return Belief(std::vector<double>(num_hypotheses,
                                    -std::log(static_cast<double>(
                                        num_hypotheses))));
}

Belief Belief::Prior(const HypothesisModel& model) {
  return FromLogProbabilities(
      {model.log_prior().begin(), model.log_prior().end()});
}

double Belief::prob(int i) const { return std::exp(log_prob_[i]); }

std::vector<double> Belief::probs() const {
  std::vector<double> p(log_prob_.size());
  std::transform(log_prob_.begin(), log_prob_.end(), p.begin(),
                 [](double v) { return std::exp(v); });
  return p;
}

void Belief::Observe(const HypothesisModel& model, int u, int y) {
  if (!model.in_support(u, y)) {
    throw ModelError("observation " + std::to_string(y) +
                     " is outside the support of experiment " +
                     std::to_string(u));
  }
  for (int k = 0; k < size(); ++k) log_prob_[k] += model.log_prob(k, u, y);
  const double norm = LogSumExp(log_prob_);
  for (double& v : log_prob_) v -= norm;
}

Belief UpdateBelief(const Belief& b, const HypothesisModel& model, int u,
                    int y) {
  Belief out = b;
  out.Observe(model, u, y);
  return out;
}

double Confidence(const Belief& b, int i) {
  double m = kNegInf;
  for (int k = 0; k < b.size(); ++k) {
    if (k != i) m = std::max(m, b.log_prob(k));
  }
  if (b.log_prob(i) == kNegInf || m == kNegInf) {
    throw BeliefError("confidence of a degenerate belief (rho(i) in {0,1})");
  }
  double sum = 0.0;
  for (int k = 0; k < b.size(); ++k) {
    if (k != i) sum += std::exp(b.log_prob(k) - m);
  }
  return b.log_prob(i) - (m + std::log(sum));
}

std::vector<int> Alternates(int num_hypotheses, int i) {
  std::vector<int> out;
  out.reserve(num_hypotheses - 1);
  for (int j = 0; j < num_hypotheses; ++j) {
    if (j != i) out.push_back(j);
  }
  return out;
}

std::vector<double> LogTildeBelief(const Belief& b, int i) {
  std::vector<double> out;
  for (int j = 0; j < b.size(); ++j) {
    if (j != i) out.push_back(b.log_prob(j));
  }
  const double norm = LogSumExp(out);
  if (norm == kNegInf) {
    throw BeliefError("tilde belief undefined: rho(i) = 1");
  }
  for (double& v : out) v -= norm;
  return out;
}

std::vector<double> TildeBelief(const Belief& b, int i) {
  auto out = LogTildeBelief(b, i);
  for (double& v : out) v = std::exp(v);
  return out;
}

Trajectory::Trajectory(const HypothesisModel& model, int reference,
                       std::optional<std::vector<double>> beta_star)
    : model_(&model),
      reference_(reference),
      alternates_(Alternates(model.num_hypotheses(), reference)),
      belief_(Belief::Prior(model)),
      prior_(belief_),
      log_tilde_prior_(LogTildeBelief(belief_, reference)),
      z_(alternates_.size(), 0.0),
      beta_star_(std::move(beta_star)) {
  if (reference < 0 || reference >= model.num_hypotheses()) {
    throw BeliefError("reference hypothesis out of range");
  }
  if (beta_star_ && beta_star_->size() != alternates_.size()) {
    throw BeliefError("beta_star must cover every alternate");
  }
}

void Trajectory::Step(int u, int y) {
  belief_.Observe(*model_, u, y);
  history_.push_back({u, y});
  const double own = model_->log_prob(reference_, u, y);
  for (std::size_t a = 0; a < alternates_.size(); ++a) {
    z_[a] += own - model_->log_prob(alternates_[a], u, y);
  }
  if (beta_star_) {
    double zb = 0.0;
    for (std::size_t a = 0; a < z_.size(); ++a) zb += (*beta_star_)[a] * z_[a];
    z_bar_ = zb;
  }
}

double Trajectory::z_of(int j) const {
  if (j == reference_ || j < 0 || j >= model_->num_hypotheses()) {
    throw BeliefError("Z is tracked only for alternates of the reference");
  }
  return z_[j < reference_ ? j : j - 1];
}

std::optional<double> Trajectory::z_bar() const {
  if (!beta_star_) return std::nullopt;
  return z_bar_;
}

double Trajectory::ConfidenceIncrement() const {
  double m = kNegInf;
  for (std::size_t a = 0; a < z_.size(); ++a) {
    m = std::max(m, log_tilde_prior_[a] - z_[a]);
  }
  double sum = 0.0;
  for (std::size_t a = 0; a < z_.size(); ++a) {
    sum += std::exp(log_tilde_prior_[a] - z_[a] - m);
  }
  return -(m + std::log(sum));
}

double Trajectory::DirectConfidenceIncrement() const {
  return Confidence(belief_, reference_) - Confidence(prior_, reference_);
}

double Trajectory::ConsistencyError() const {
  std::vector<double> log_p(model_->log_prior().begin(),
                            model_->log_prior().end());
  std::vector<double> z(alternates_.size(), 0.0);
  for (const auto& s : history_) {
    for (int k = 0; k < model_->num_hypotheses(); ++k) {
      log_p[k] += model_->log_prob(k, s.experiment, s.observation);
    }
    for (std::size_t a = 0; a < alternates_.size(); ++a) {
      z[a] += model_->log_prob(reference_, s.experiment, s.observation) -
              model_->log_prob(alternates_[a], s.experiment, s.observation);
    }
  }
  const Belief fresh = Belief::FromLogProbabilities(std::move(log_p));
  double err = 0.0;
  for (int k = 0; k < fresh.size(); ++k) {
    err = std::max(err, std::abs(fresh.log_prob(k) - belief_.log_prob(k)));
  }
  for (std::size_t a = 0; a < z.size(); ++a) {
    err = std::max(err, std::abs(z[a] - z_[a]));
  }
  if (beta_star_) {
    double zb = 0.0;
    for (std::size_t a = 0; a < z_.size(); ++a) zb += (*beta_star_)[a] * z_[a];
    err = std::max(err, std::abs(zb - z_bar_));
  }
  return err;
}

Trajectory StepTrajectory(Trajectory t, int u, int y) {
  t.Step(u, y);
  return t;
}

DecompositionTerms Decompose(const Trajectory& t,
                             std::span<const double> beta_star) {
  if (beta_star.size() != t.alternates().size() ||
      !IsDistribution(beta_star, 1e-10)) {
    throw BeliefError("beta_star must be a distribution over the alternates");
  }
  const auto tilde_end = TildeBelief(t.belief(), t.reference());
  const auto tilde_start = TildeBelief(t.prior(), t.reference());
  double z_bar = 0.0;
  for (std::size_t a = 0; a < beta_star.size(); ++a) {
    z_bar += beta_star[a] * t.z()[a];
  }
  return {CrossEntropy(beta_star, tilde_end), z_bar,
          CrossEntropy(beta_star, tilde_start)};
}

void WriteTrajectoryDump(std::ostream& os, const Trajectory& t,
                         char delimiter) {
  const auto& m = t.model();
  os << "step" << delimiter << "experiment" << delimiter << "observation"
     << delimiter << "confidence";
  for (int j : t.alternates()) os << delimiter << "z_" << j;
  os << '\n';
  Trajectory replay(m, t.reference());
  for (int n = 0; n < t.steps(); ++n) {
    const auto& s = t.history()[n];
    replay.Step(s.experiment, s.observation);
    os << n + 1 << delimiter << m.experiment_names()[s.experiment]
       << delimiter << m.observation_names()[s.observation] << delimiter
       << FormatFloat(Confidence(replay.belief(), t.reference()));
    for (double z : replay.z()) os << delimiter << FormatFloat(z);
    os << '\n';
  }
}

}  // namespace aht
