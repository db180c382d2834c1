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

#ifndef AHT_MONTECARLO_H_
#define AHT_MONTECARLO_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "aht/belief.h"
#include "aht/inference.h"
#include "aht/model.h"
#include "aht/numeric.h"
#include "aht/strategy.h"

namespace aht {

class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Worker count from AHT_WORKERS, else the hardware concurrency.
int DefaultWorkers();

// Calls fn(begin, end) over contiguous chunks of [0, n) on up to `workers`
// threads. The result must not depend on the chunking.
void ParallelFor(std::int64_t n, int workers,
                 const std::function<void(std::int64_t, std::int64_t)>& fn);

// Seed streams. Evaluation trials use the master seed itself; threshold
// calibration uses a stream derived from it so the two never share draws.
std::uint64_t CalibrationSeed(std::uint64_t master);
std::uint64_t TrialSeed(std::uint64_t stream, int hypothesis,
                        std::int64_t trial);

struct TrialResult {
  Trajectory trajectory;
  int decision;
};

// Runs N steps under X = true_hypothesis: the strategy draws first, then the
// observation. The trajectory is referenced to spec.reference, or to the
// true hypothesis for the symmetric composite.
TrialResult RunTrial(const HypothesisModel& model, const StrategySpec& spec,
                     const InferenceRule& rule, int horizon,
                     int true_hypothesis, std::uint64_t seed);

// Per-trial confidence increments C_k(rho_{N+1}) - C_k(rho_1) for every k,
// stored row-major (trial, k), plus Z_bar_N against `zbar_reference` when
// a game solution for it is supplied.
struct TrialBatch {
  int num_hypotheses = 0;
  int true_hypothesis = 0;
  std::vector<double> increments;
  std::vector<double> zbar;
  std::int64_t trials() const {
    return num_hypotheses == 0
               ? 0
               : static_cast<std::int64_t>(increments.size()) / num_hypotheses;
  }
  double increment(std::int64_t t, int k) const {
    return increments[t * num_hypotheses + k];
  }
};

TrialBatch SimulateBatch(const HypothesisModel& model, const StrategySpec& spec,
                         int horizon, int true_hypothesis, std::int64_t trials,
                         std::uint64_t stream, int workers,
                         const GameSolution* zbar_game = nullptr);

struct LseEstimate {
  double log_inv_phi = 0.0;  // ln(1/phi_hat)
  double se = 0.0;           // jackknife over contiguous batches
  std::int64_t accepted = 0;
  bool lower_bound = false;  // no accepted trial: ln T is only a lower bound
};

// ln T - logsumexp(-increment) over the accepted trials, with the trials
// drawn under the hypothesis being declared.
LseEstimate EstimatePhiLse(std::span<const double> increments,
                           std::span<const char> accepted, int batches = 100);

// Largest theta in [-N B, N B + max(-log tilde_rho_1)] whose empirical
// acceptance frequency over `increments` is >= 1 - eps, by bisection down to
// `tol`. The lower bracket is returned, so the answer is always feasible.
double BestThreshold(std::span<const double> increments, double epsilon,
                     double lo, double hi, double tol);

struct ThresholdSearch {
  double theta;
  double psi_calibration;
};

// Simulates `trials` runs under X = reference on the calibration stream once
// and bisects over the stored increments (common random numbers).
ThresholdSearch BestThresholdSearch(const HypothesisModel& model,
                                    const StrategySpec& spec, int reference,
                                    int horizon, double epsilon,
                                    std::int64_t trials, double tol,
                                    std::uint64_t master_seed, int workers);

struct SimulationConfig {
  const HypothesisModel* model = nullptr;
  StrategySpec strategy;
  InferenceRule rule;
  int horizon = 1;
  std::int64_t trials = 100000;  // per true hypothesis
  std::uint64_t seed = 1;
  int workers = 1;
};

struct HypothesisEstimate {
  int hypothesis = 0;
  double psi_hat = 0.0;
  double psi_se = 0.0;
  double phi_hat = 0.0;  // plain frequency under the alternate mixture
  double phi_se = 0.0;
  LseEstimate lse;
};

struct SimulationReport {
  std::vector<HypothesisEstimate> per_hypothesis;  // hypotheses in scope
  double gamma_hat = 0.0;
  double gamma_se = 0.0;
  // histogram[x][d + 1]: trials under X = x declaring d (d = -1 abstains).
  std::vector<std::vector<std::int64_t>> histogram;
  std::int64_t trials_per_hypothesis = 0;
  double wall_seconds = 0.0;
  std::uint64_t seed = 0;
};

// T trials under every true hypothesis. phi_hat(i) weights the per-x
// frequencies of declaring i by rho_1(x) / (1 - rho_1(i)).
SimulationReport Estimate(const SimulationConfig& config);

struct ExactResult {
  std::vector<double> psi;
  std::vector<double> phi;
  double gamma = 0.0;
};

using Policy = std::function<int(const Belief&)>;

// Visits every observation path of length N under a deterministic policy.
// The callback gets the leaf trajectory (referenced to `reference`, with
// `beta_star` if given) and log P_k(path) for every hypothesis k.
void EnumeratePaths(
    const HypothesisModel& model, const Policy& policy, int horizon,
    int reference, const std::optional<std::vector<double>>& beta_star,
    const std::function<void(const Trajectory&, std::span<const double>)>&
        visit);

inline constexpr int kEnumerationCap = 10;

// Exact psi, phi and gamma for a deterministic strategy.
ExactResult EnumerateExact(const HypothesisModel& model,
                           const StrategySpec& spec, const InferenceRule& rule,
                           int horizon, int cap = kEnumerationCap);

}  // namespace aht

#endif  // AHT_MONTECARLO_H_
