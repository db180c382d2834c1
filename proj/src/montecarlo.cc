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

#include "aht/montecarlo.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace aht {
namespace {

constexpr std::uint64_t kCalibrationSalt = 0x63616c6962726174ULL;

void RunInto(const HypothesisModel& model, const StrategySpec& spec,
             int horizon, int x, std::uint64_t seed, Trajectory& t) {
  Rng rng(seed);
  t.Reserve(horizon);
  for (int n = 0; n < horizon; ++n) {
    const int u = SelectExperiment(spec, model, t.belief(), rng);
    const int y = SampleIndex(model.row(x, u), rng);
    t.Step(u, y);
  }
}

int TrajectoryReference(const StrategySpec& spec, int x) {
  return spec.reference >= 0 ? spec.reference : x;
}

double BinomialSe(double p, double n) { return std::sqrt(p * (1.0 - p) / n); }

}  // namespace

int DefaultWorkers() {
  if (const char* env = std::getenv("AHT_WORKERS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void ParallelFor(std::int64_t n, int workers,
                 const std::function<void(std::int64_t, std::int64_t)>& fn) {
  if (n <= 0) return;
  workers = static_cast<int>(std::min<std::int64_t>(std::max(1, workers), n));
  if (workers == 1) {
    fn(0, n);
    return;
  }
  const std::int64_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex mu;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t begin = w * chunk;
    const std::int64_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::uint64_t CalibrationSeed(std::uint64_t master) {
  return Mix64(master ^ kCalibrationSalt);
}

std::uint64_t TrialSeed(std::uint64_t stream, int hypothesis,
                        std::int64_t trial) {
  return HashSeed(stream, static_cast<std::uint64_t>(hypothesis),
                  static_cast<std::uint64_t>(trial));
}

TrialResult RunTrial(const HypothesisModel& model, const StrategySpec& spec,
                     const InferenceRule& rule, int horizon,
                     int true_hypothesis, std::uint64_t seed) {
  Trajectory t(model, TrajectoryReference(spec, true_hypothesis));
  RunInto(model, spec, horizon, true_hypothesis, seed, t);
  const int decision = Infer(t.belief(), t.prior(), rule);
  return {std::move(t), decision};
}

TrialBatch SimulateBatch(const HypothesisModel& model, const StrategySpec& spec,
                         int horizon, int true_hypothesis, std::int64_t trials,
                         std::uint64_t stream, int workers,
                         const GameSolution* zbar_game) {
  if (trials < 1) throw SimulationError("trials must be >= 1");
  const int m = model.num_hypotheses();
  TrialBatch batch;
  batch.num_hypotheses = m;
  batch.true_hypothesis = true_hypothesis;
  batch.increments.assign(trials * m, 0.0);
  if (zbar_game) batch.zbar.assign(trials, 0.0);
  const Belief prior = Belief::Prior(model);
  std::vector<double> prior_conf(m);
  for (int k = 0; k < m; ++k) prior_conf[k] = Confidence(prior, k);

  ParallelFor(trials, workers, [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t t = begin; t < end; ++t) {
      std::optional<std::vector<double>> beta;
      int ref = TrajectoryReference(spec, true_hypothesis);
      if (zbar_game) {
        beta = zbar_game->beta_star;
        ref = zbar_game->reference;
      }
      Trajectory traj(model, ref, std::move(beta));
      RunInto(model, spec, horizon, true_hypothesis,
              TrialSeed(stream, true_hypothesis, t), traj);
      for (int k = 0; k < m; ++k) {
        batch.increments[t * m + k] =
            Confidence(traj.belief(), k) - prior_conf[k];
      }
      if (zbar_game) batch.zbar[t] = *traj.z_bar();
    }
  });
  return batch;
}

LseEstimate EstimatePhiLse(std::span<const double> increments,
                           std::span<const char> accepted, int batches) {
  if (increments.size() != accepted.size() || increments.empty()) {
    throw SimulationError("EstimatePhiLse needs matching nonempty inputs");
  }
  const std::int64_t total = static_cast<std::int64_t>(increments.size());
  const int nb = static_cast<int>(std::min<std::int64_t>(batches, total));
  std::vector<double> batch_lse(nb, kNegInf);
  std::vector<std::int64_t> batch_size(nb, 0);
  LseEstimate est;
  for (int b = 0; b < nb; ++b) {
    const std::int64_t begin = total * b / nb;
    const std::int64_t end = total * (b + 1) / nb;
    batch_size[b] = end - begin;
    std::vector<double> v;
    for (std::int64_t t = begin; t < end; ++t) {
      if (accepted[t]) v.push_back(-increments[t]);
    }
    est.accepted += static_cast<std::int64_t>(v.size());
    batch_lse[b] = LogSumExp(v);
  }
  const double log_total = std::log(static_cast<double>(total));
  if (est.accepted == 0) {
    est.log_inv_phi = log_total;
    est.lower_bound = true;
    est.se = kNaN;
    return est;
  }
  est.log_inv_phi = log_total - LogSumExp(batch_lse);
  if (nb < 2) {
    est.se = kNaN;
    return est;
  }
  std::vector<double> loo(nb);
  std::vector<double> others;
  others.reserve(nb - 1);
  for (int b = 0; b < nb; ++b) {
    others.clear();
    for (int c = 0; c < nb; ++c) {
      if (c != b) others.push_back(batch_lse[c]);
    }
    loo[b] = std::log(static_cast<double>(total - batch_size[b])) -
             LogSumExp(others);
  }
  double mean = 0.0;
  for (double v : loo) mean += v;
  mean /= nb;
  if (!std::isfinite(mean)) {
    est.se = kInf;
    return est;
  }
  double ss = 0.0;
  for (double v : loo) ss += (v - mean) * (v - mean);
  est.se = std::sqrt(ss * (nb - 1.0) / nb);
  return est;
}

double BestThreshold(std::span<const double> increments, double epsilon,
                     double lo, double hi, double tol) {
  if (increments.empty()) throw SimulationError("no increments to search");
  std::vector<double> sorted(increments.begin(), increments.end());
  std::sort(sorted.begin(), sorted.end());
  const double t = static_cast<double>(sorted.size());
  auto feasible = [&](double theta) {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), theta);
    const double accepted = static_cast<double>(sorted.end() - it);
    return accepted / t >= 1.0 - epsilon;
  };
  if (!feasible(lo)) {
    throw SimulationError(
        "threshold search: even the lowest bracket misses 1 - eps");
  }
  if (feasible(hi)) return hi;
  while (hi - lo > tol) {
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

ThresholdSearch BestThresholdSearch(const HypothesisModel& model,
                                    const StrategySpec& spec, int reference,
                                    int horizon, double epsilon,
                                    std::int64_t trials, double tol,
                                    std::uint64_t master_seed, int workers) {
  const TrialBatch batch =
      SimulateBatch(model, spec, horizon, reference, trials,
                    CalibrationSeed(master_seed), workers);
  std::vector<double> inc(trials);
  for (std::int64_t t = 0; t < trials; ++t) inc[t] = batch.increment(t, reference);
  const auto log_tilde = LogTildeBelief(Belief::Prior(model), reference);
  double spread = 0.0;
  for (double v : log_tilde) spread = std::max(spread, -v);
  const double nb = horizon * model.llr_bound();
  const double theta =
      BestThreshold(inc, epsilon, -nb - 1e-6, nb + spread, tol);
  std::int64_t hits = 0;
  for (double v : inc) hits += v >= theta;
  return {theta, static_cast<double>(hits) / trials};
}

SimulationReport Estimate(const SimulationConfig& config) {
  if (!config.model) throw SimulationError("config has no model");
  if (config.trials < 1) throw SimulationError("trials must be >= 1");
  if (config.horizon < 0) throw SimulationError("horizon must be >= 0");
  const auto start = std::chrono::steady_clock::now();
  const HypothesisModel& model = *config.model;
  const int m = model.num_hypotheses();
  const double T = static_cast<double>(config.trials);

  SimulationReport report;
  report.seed = config.seed;
  report.trials_per_hypothesis = config.trials;
  report.histogram.assign(m, std::vector<std::int64_t>(m + 1, 0));
  std::vector<TrialBatch> batches;
  std::vector<std::vector<int>> decisions(m);
  for (int x = 0; x < m; ++x) {
    batches.push_back(SimulateBatch(model, config.strategy, config.horizon, x,
                                    config.trials, config.seed,
                                    config.workers));
    decisions[x].resize(config.trials);
    for (std::int64_t t = 0; t < config.trials; ++t) {
      const auto inc = std::span<const double>(batches[x].increments)
                           .subspan(t * m, m);
      const int d = InferFromIncrements(inc, config.rule);
      decisions[x][t] = d;
      ++report.histogram[x][d + 1];
    }
  }

  const auto prior = model.prior();
  double gamma_var = 0.0;
  for (int i = 0; i < m; ++i) {
    if (!config.rule.thresholds[i]) continue;
    HypothesisEstimate h;
    h.hypothesis = i;
    h.psi_hat = report.histogram[i][i + 1] / T;
    h.psi_se = BinomialSe(h.psi_hat, T);
    double var = 0.0;
    for (int x = 0; x < m; ++x) {
      if (x == i) continue;
      const double w = prior[x] / (1.0 - prior[i]);
      const double f = report.histogram[x][i + 1] / T;
      h.phi_hat += w * f;
      var += w * w * f * (1.0 - f) / T;
    }
    h.phi_se = std::sqrt(var);
    std::vector<double> inc(config.trials);
    std::vector<char> acc(config.trials);
    for (std::int64_t t = 0; t < config.trials; ++t) {
      inc[t] = batches[i].increment(t, i);
      acc[t] = decisions[i][t] == i;
    }
    h.lse = EstimatePhiLse(inc, acc);
    report.gamma_hat += (1.0 - prior[i]) * h.phi_hat;
    gamma_var += (1.0 - prior[i]) * (1.0 - prior[i]) * var;
    report.per_hypothesis.push_back(h);
  }
  report.gamma_se = std::sqrt(gamma_var);
  report.wall_seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return report;
}

}  // namespace aht
