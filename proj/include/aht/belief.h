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

#ifndef AHT_BELIEF_H_
#define AHT_BELIEF_H_

#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "aht/model.h"

namespace aht {

class BeliefError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Posterior over hypotheses, held as normalized log-probabilities.
class Belief {
 public:
  // Normalizes; zero entries become -inf.
  static Belief FromProbabilities(std::span<const double> p);
  static Belief FromLogProbabilities(std::vector<double> log_p);
  static Belief Uniform(int num_hypotheses);
  static Belief Prior(const HypothesisModel& model);

  int size() const { return static_cast<int>(log_prob_.size()); }
  double log_prob(int i) const { return log_prob_[i]; }
  double prob(int i) const;
  std::span<const double> log_probs() const { return log_prob_; }
  std::vector<double> probs() const;

  // In-place Bayes update; see UpdateBelief.
  void Observe(const HypothesisModel& model, int u, int y);

 private:
  explicit Belief(std::vector<double> log_p) : log_prob_(std::move(log_p)) {}
  std::vector<double> log_prob_;
};

// Bayes update after observing y from experiment u.
Belief UpdateBelief(const Belief& b, const HypothesisModel& model, int u,
                    int y);

// C_i(rho) = log(rho(i) / (1 - rho(i))), computed as
// log rho(i) - logsumexp_{k != i} log rho(k). Throws on rho(i) in {0, 1}.
double Confidence(const Belief& b, int i);

// The alternates of i in ascending order.
std::vector<int> Alternates(int num_hypotheses, int i);

// rho(j) / (1 - rho(i)) over the alternates of i, in Alternates() order.
std::vector<double> TildeBelief(const Belief& b, int i);
std::vector<double> LogTildeBelief(const Belief& b, int i);

struct StepRecord {
  int experiment;
  int observation;
};

// One run's state relative to a fixed reference hypothesis: history, current
// posterior, and the total log-likelihood ratios Z_n(j) against each
// alternate. Single-owner mutable state.
class Trajectory {
 public:
  // `beta_star`, when given, weights the alternates for z_bar(); it is
  // indexed like Alternates(M, reference).
  Trajectory(const HypothesisModel& model, int reference,
             std::optional<std::vector<double>> beta_star = std::nullopt);

  // Appends (u, y); throws ModelError when y is outside Y(u).
  void Step(int u, int y);
  void Reserve(int steps) { history_.reserve(steps); }

  const HypothesisModel& model() const { return *model_; }
  int reference() const { return reference_; }
  // Number of completed steps; the trajectory sits at time steps() + 1.
  int steps() const { return static_cast<int>(history_.size()); }
  std::span<const StepRecord> history() const { return history_; }
  const Belief& belief() const { return belief_; }
  const Belief& prior() const { return prior_; }
  const std::vector<int>& alternates() const { return alternates_; }

  // Z_n(j), indexed like alternates().
  std::span<const double> z() const { return z_; }
  double z_of(int j) const;
  std::optional<double> z_bar() const;
  const std::optional<std::vector<double>>& beta_star() const {
    return beta_star_;
  }

  // -logsumexp_j(log tilde_rho_1(j) - Z_n(j)).
  double ConfidenceIncrement() const;
  // C_i(rho_{n+1}) - C_i(rho_1) from the belief directly.
  double DirectConfidenceIncrement() const;

  // Largest deviation between `belief()` and the posterior recomputed from
  // the prior and history, and between z_bar and the weighted z.
  double ConsistencyError() const;

 private:
  const HypothesisModel* model_;
  int reference_;
  std::vector<int> alternates_;
  std::vector<StepRecord> history_;
  Belief belief_;
  Belief prior_;
  std::vector<double> log_tilde_prior_;
  std::vector<double> z_;
  std::optional<std::vector<double>> beta_star_;
  double z_bar_ = 0.0;
};

Trajectory StepTrajectory(Trajectory t, int u, int y);

struct DecompositionTerms {
  double cross_entropy_end;    // H(beta, tilde_rho_{n+1})
  double z_bar;                // sum_j beta(j) Z_n(j)
  double cross_entropy_start;  // H(beta, tilde_rho_1)
};

// Terms of C_i(rho_{n+1}) - C_i(rho_1) = -H_end + z_bar + H_start.
DecompositionTerms Decompose(const Trajectory& t,
                             std::span<const double> beta_star);

// Delimited dump: step, experiment, observation, C_i(rho), Z(j)...
void WriteTrajectoryDump(std::ostream& os, const Trajectory& t,
                         char delimiter = ',');

}  // namespace aht

#endif  // AHT_BELIEF_H_
