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

#include "aht/sweep.h"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <stdexcept>

#include "aht/bounds.h"
#include "aht/builtin_models.h"
#include "aht/game.h"
#include "aht/inference.h"

namespace aht {
namespace {

double RowEpsilon(const SweepRequest& req, int horizon) {
  return req.epsilon > 0.0 ? req.epsilon : EpsilonSchedule(horizon);
}

void FillAcceptance(const TrialBatch& batch, int k,
                    const std::vector<int>& decisions, HypothesisDetail& d) {
  const std::int64_t trials = batch.trials();
  std::vector<double> inc(trials);
  std::vector<char> acc(trials);
  std::int64_t hits = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    inc[t] = batch.increment(t, k);
    acc[t] = decisions[t] == k;
    hits += acc[t];
  }
  const double T = static_cast<double>(trials);
  d.psi_hat = hits / T;
  d.psi_se = std::sqrt(d.psi_hat * (1.0 - d.psi_hat) / T);
  d.lse = EstimatePhiLse(inc, acc);
}

SweepResult AsymmetricRow(const SweepRequest& req, const HypothesisModel& model,
                          StrategyKind kind, int horizon) {
  const int i = req.reference;
  const int m = model.num_hypotheses();
  const double eps = RowEpsilon(req, horizon);
  const double b = model.llr_bound();
  const GameSolution game = SolveGame(model, i);
  const double s = SScheduleValue(horizon, m, eps, b);
  const StrategySpec spec = MakeStrategy(kind, model, game, s);

  double theta = req.threshold_value;
  if (req.threshold == ThresholdMode::kEmpirical) {
    theta = BestThresholdSearch(model, spec, i, horizon, eps, req.trials,
                                req.tolerance, req.seed, req.workers)
                .theta;
  } else if (req.threshold == ThresholdMode::kTheory) {
    theta = ThresholdAsymmetric(horizon, game, eps, m, b);
  }

  const auto nu = BinaryAnomalyParameter(model);
  const bool closed_form = nu && i == 0;
  const TrialBatch batch =
      SimulateBatch(model, spec, horizon, i, req.trials, req.seed, req.workers,
                    closed_form ? nullptr : &game);
  const InferenceRule rule = AsymmetricRule(m, i, theta, eps);
  std::vector<int> decisions(batch.trials());
  for (std::int64_t t = 0; t < batch.trials(); ++t) {
    decisions[t] = batch.increment(t, i) >= theta ? i : kInconclusive;
  }
  HypothesisDetail d;
  d.hypothesis = i;
  d.theta = theta;
  FillAcceptance(batch, i, decisions, d);

  const Belief prior = Belief::Prior(model);
  SweepResult r;
  r.detail.push_back(d);
  SweepRow& row = r.row;
  row.strategy = StrategyKindName(kind);
  row.horizon = horizon;
  row.epsilon = eps;
  row.theta = theta;
  row.psi_hat = d.psi_hat;
  row.psi_se = d.psi_se;
  row.log_inv_phi = d.lse.log_inv_phi;
  row.log_inv_phi_se = d.lse.se;
  row.phi_db = NatsToDb(row.log_inv_phi);
  row.gamma_hat = (1.0 - prior.prob(i)) * std::exp(-row.log_inv_phi);
  row.weak_bound = WeakConverse(game, prior, horizon, eps);
  if (closed_form) {
    row.strong_bound = StrongBoundBinaryExample(horizon, *nu, eps);
  } else {
    const double h_start =
        CrossEntropy(game.beta_star, TildeBelief(prior, i));
    const auto sb = TightestStrongConverse(batch.zbar, h_start, eps);
    row.strong_bound = sb ? sb->bound : kInf;
  }
  row.seed = req.seed;
  return r;
}

SweepResult SymmetricRow(const SweepRequest& req, const HypothesisModel& model,
                         int horizon) {
  const int m = model.num_hypotheses();
  const double eps = RowEpsilon(req, horizon);
  const double b = model.llr_bound();
  std::vector<GameSolution> games;
  for (int i = 0; i < m; ++i) games.push_back(SolveGame(model, i));
  const double s = SScheduleValue(horizon, m, eps, b);
  const StrategySpec spec =
      MakeSymmetricStrategy(ParseStrategyKind(req.inner), model, games, s,
                            req.allow_indistinguishable);
  const Belief prior = Belief::Prior(model);
  const int n_prime = req.n_prime > 0 ? req.n_prime : DefaultNPrime(horizon);

  std::vector<double> thetas(m);
  for (int i = 0; i < m; ++i) {
    const double clamp = req.zeta - Confidence(prior, i);
    switch (req.threshold) {
      case ThresholdMode::kEmpirical:
        thetas[i] = std::max(
            clamp, BestThresholdSearch(model, spec, i, horizon, eps,
                                       req.trials, req.tolerance, req.seed,
                                       req.workers)
                       .theta);
        break;
      case ThresholdMode::kTheory:
        thetas[i] = ThresholdSymmetric(horizon, games[i], eps, m, b, n_prime,
                                       req.zeta, prior);
        break;
      case ThresholdMode::kValue:
        if (!(req.threshold_value > -Confidence(prior, i))) {
          throw InferenceError(
              "symmetric thresholds must exceed -C_i(rho_1) for every i");
        }
        thetas[i] = req.threshold_value;
        break;
    }
  }
  const InferenceRule rule = SymmetricRule(thetas, eps);

  SweepResult r;
  double gamma = 0.0, gamma_var = 0.0;
  for (int x = 0; x < m; ++x) {
    const TrialBatch batch = SimulateBatch(model, spec, horizon, x,
                                           req.trials, req.seed, req.workers);
    std::vector<int> decisions(batch.trials());
    for (std::int64_t t = 0; t < batch.trials(); ++t) {
      decisions[t] = InferFromIncrements(
          std::span<const double>(batch.increments).subspan(t * m, m), rule);
    }
    HypothesisDetail d;
    d.hypothesis = x;
    d.theta = thetas[x];
    FillAcceptance(batch, x, decisions, d);
    const double w = (1.0 - prior.prob(x)) * std::exp(-d.lse.log_inv_phi);
    gamma += w;
    gamma_var += w * w * d.lse.se * d.lse.se;
    r.detail.push_back(d);
  }

  SweepRow& row = r.row;
  row.strategy = StrategyKindName(StrategyKind::kSymmetricComposite);
  row.horizon = horizon;
  row.epsilon = eps;
  row.theta = *std::min_element(thetas.begin(), thetas.end());
  const auto worst = std::min_element(
      r.detail.begin(), r.detail.end(),
      [](const auto& a, const auto& c) { return a.psi_hat < c.psi_hat; });
  row.psi_hat = worst->psi_hat;
  row.psi_se = worst->psi_se;
  row.gamma_hat = gamma;
  row.log_inv_phi = -std::log(gamma);
  row.log_inv_phi_se = std::sqrt(gamma_var) / gamma;
  row.phi_db = NatsToDb(row.log_inv_phi);
  row.weak_bound = WeakConverseSymmetric(games, prior, horizon, eps);
  row.strong_bound = kNaN;
  row.seed = req.seed;
  return r;
}

}  // namespace

ThresholdMode ParseThresholdMode(const std::string& name) {
  if (name == "empirical") return ThresholdMode::kEmpirical;
  if (name == "theory") return ThresholdMode::kTheory;
  if (name == "value") return ThresholdMode::kValue;
  throw std::invalid_argument("unknown threshold mode '" + name + "'");
}

std::string ThresholdModeName(ThresholdMode mode) {
  switch (mode) {
    case ThresholdMode::kEmpirical: return "empirical";
    case ThresholdMode::kTheory: return "theory";
    case ThresholdMode::kValue: return "value";
  }
  return "unknown";
}

SweepResult RunSweepRow(const SweepRequest& request,
                        const HypothesisModel& model,
                        const std::string& strategy, int horizon) {
  if (horizon < 1) throw std::invalid_argument("horizons must be >= 1");
  if (request.trials < 1) throw std::invalid_argument("trials must be >= 1");
  const StrategyKind kind = ParseStrategyKind(strategy);
  if (kind == StrategyKind::kSymmetricComposite) {
    return SymmetricRow(request, model, horizon);
  }
  if (request.reference < 0 || request.reference >= model.num_hypotheses()) {
    throw ModelError("reference hypothesis " +
                     std::to_string(request.reference) + " out of range");
  }
  return AsymmetricRow(request, model, kind, horizon);
}

std::vector<SweepResult> RunSweep(const SweepRequest& request) {
  const HypothesisModel model =
      LoadModel(request.model_document, request.llr_slack);
  std::vector<SweepResult> out;
  for (const auto& s : request.strategies) {
    for (int n : request.horizons) {
      out.push_back(RunSweepRow(request, model, s, n));
    }
  }
  return out;
}

const char* const kSweepCsvHeader =
    "strategy,N,epsilon,theta,psi_hat,psi_se,log_inv_phi,log_inv_phi_se,"
    "phi_db,gamma_hat,weak_bound,strong_bound,seed";

void WriteSweepCsv(std::ostream& os, const std::vector<SweepResult>& rows) {
  os << kSweepCsvHeader << '\n';
  for (const auto& r : rows) {
    const SweepRow& w = r.row;
    os << w.strategy << ',' << w.horizon << ',' << FormatFloat(w.epsilon)
       << ',' << FormatFloat(w.theta) << ',' << FormatFloat(w.psi_hat) << ','
       << FormatFloat(w.psi_se) << ',' << FormatFloat(w.log_inv_phi) << ','
       << FormatFloat(w.log_inv_phi_se) << ',' << FormatFloat(w.phi_db) << ','
       << FormatFloat(w.gamma_hat) << ',' << FormatFloat(w.weak_bound) << ','
       << FormatFloat(w.strong_bound) << ',' << w.seed << '\n';
  }
}

nlohmann::ordered_json ManifestJson(const SweepRequest& r,
                                    const std::string& timestamp) {
  nlohmann::ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["timestamp"] = timestamp;
  j["subcommand"] = r.subcommand;
  j["model"] = {{"source", r.model_source}, {"document", r.model_document}};
  j["seed"] = r.seed;
  auto& f = j["flags"];
  f["llr_slack"] = r.llr_slack;
  f["strategies"] = r.strategies;
  f["inner"] = r.inner;
  f["horizons"] = r.horizons;
  f["reference"] = r.reference;
  f["trials"] = r.trials;
  f["seed"] = r.seed;
  f["epsilon"] = r.epsilon;
  f["threshold"] = ThresholdModeName(r.threshold);
  f["threshold_value"] = r.threshold_value;
  f["zeta"] = r.zeta;
  f["n_prime"] = r.n_prime;
  f["tolerance"] = r.tolerance;
  f["allow_indistinguishable"] = r.allow_indistinguishable;
  f["workers"] = r.workers;
  return j;
}

SweepRequest RequestFromManifest(const nlohmann::json& j) {
  if (!j.contains("tool") || j.at("tool") != kToolName) {
    throw std::invalid_argument("not an aht manifest");
  }
  SweepRequest r;
  r.subcommand = j.at("subcommand").get<std::string>();
  r.model_source = j.at("model").at("source").get<std::string>();
  r.model_document = j.at("model").at("document").get<std::string>();
  const auto& f = j.at("flags");
  r.llr_slack = f.at("llr_slack").get<double>();
  r.strategies = f.at("strategies").get<std::vector<std::string>>();
  r.inner = f.at("inner").get<std::string>();
  r.horizons = f.at("horizons").get<std::vector<int>>();
  r.reference = f.at("reference").get<int>();
  r.trials = f.at("trials").get<std::int64_t>();
  r.seed = f.at("seed").get<std::uint64_t>();
  r.epsilon = f.at("epsilon").get<double>();
  r.threshold = ParseThresholdMode(f.at("threshold").get<std::string>());
  r.threshold_value = f.at("threshold_value").get<double>();
  r.zeta = f.at("zeta").get<double>();
  r.n_prime = f.at("n_prime").get<int>();
  r.tolerance = f.at("tolerance").get<double>();
  r.allow_indistinguishable = f.at("allow_indistinguishable").get<bool>();
  r.workers = f.at("workers").get<int>();
  return r;
}

std::string UtcTimestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace aht
