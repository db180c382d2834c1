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

// Command-line driver: solve-game, simulate, sweep, bounds, enumerate, rerun.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aht/bounds.h"
#include "aht/builtin_models.h"
#include "aht/game.h"
#include "aht/inference.h"
#include "aht/model.h"
#include "aht/montecarlo.h"
#include "aht/strategy.h"
#include "aht/sweep.h"
#include "json.hpp"

namespace {

constexpr int kExitValidation = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  std::string model;
  double llr_slack = -1.0;
  int reference = 0;
  std::int64_t trials = 100000;
  std::uint64_t seed = 1;
  double epsilon = -1.0;
  std::string threshold = "empirical";
  double zeta = 0.01;
  int n_prime = 0;
  double tolerance = 1e-7;
  bool allow_indistinguishable = false;
  int workers = 0;
  std::string output;
  std::string inner = "das";
};

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// "a:b:c" (start, stop inclusive, step), "a,b,c", or a single value.
std::vector<int> ParseHorizons(const std::string& s) {
  std::vector<int> out;
  if (s.find(':') != std::string::npos) {
    std::vector<int> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(std::stoi(item));
    if (parts.size() != 3 || parts[2] <= 0 || parts[0] < 1) {
      throw UsageError("--horizons expects start:stop:step with step > 0");
    }
    for (int n = parts[0]; n <= parts[1]; n += parts[2]) out.push_back(n);
    return out;
  }
  for (const auto& item : SplitList(s)) out.push_back(std::stoi(item));
  for (int n : out) {
    if (n < 1) throw UsageError("horizons must be >= 1");
  }
  return out;
}

void AddCommon(CLI::App* app, CommonFlags& f, bool simulation) {
  app->add_option("--model", f.model, "table1, table2, or a model file")
      ->required();
  app->add_option("--llr-slack", f.llr_slack,
                  "slack added to the tight LLR bound B");
  app->add_option("--reference", f.reference, "reference hypothesis index");
  if (!simulation) return;
  app->add_option("--trials", f.trials, "trials per hypothesis")
      ->check(CLI::PositiveNumber);
  app->add_option("--seed", f.seed, "master seed");
  app->add_option("--epsilon", f.epsilon,
                  "fixed eps_N (default min{0.05, 10/N})");
  app->add_option("--threshold", f.threshold,
                  "empirical, theory, or a numeric threshold");
  app->add_option("--inner", f.inner,
                  "inner strategy of the symmetric composite");
  app->add_option("--zeta", f.zeta, "symmetric threshold margin");
  app->add_option("--n-prime", f.n_prime, "N' for symmetric thresholds");
  app->add_option("--tolerance", f.tolerance, "threshold search bracket");
  app->add_flag("--allow-indistinguishable", f.allow_indistinguishable,
                "run the symmetric strategy on models with D = 0 pairs");
  app->add_option("--workers", f.workers, "worker threads");
  app->add_option("--output", f.output, "CSV path (default stdout)");
}

aht::SweepRequest RequestFrom(const CommonFlags& f,
                              const std::string& subcommand) {
  aht::SweepRequest r;
  r.subcommand = subcommand;
  r.model_source = f.model;
  r.model_document = aht::ResolveModelDocument(f.model);
  r.llr_slack = f.llr_slack;
  r.inner = f.inner;
  r.reference = f.reference;
  r.trials = f.trials;
  r.seed = f.seed;
  r.epsilon = f.epsilon;
  if (f.threshold == "empirical" || f.threshold == "theory") {
    r.threshold = aht::ParseThresholdMode(f.threshold);
  } else {
    try {
      std::size_t used = 0;
      r.threshold_value = std::stod(f.threshold, &used);
      if (used != f.threshold.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw UsageError("--threshold expects empirical, theory, or a number");
    }
    r.threshold = aht::ThresholdMode::kValue;
  }
  r.zeta = f.zeta;
  r.n_prime = f.n_prime;
  r.tolerance = f.tolerance;
  r.allow_indistinguishable = f.allow_indistinguishable;
  r.workers = f.workers > 0 ? f.workers : aht::DefaultWorkers();
  return r;
}

void ValidateReference(const aht::HypothesisModel& m, int reference) {
  if (reference < 0 || reference >= m.num_hypotheses()) {
    throw aht::ModelError("reference hypothesis " + std::to_string(reference) +
                          " out of range [0, " +
                          std::to_string(m.num_hypotheses() - 1) + "]");
  }
}

void WarnAssumptions(const aht::HypothesisModel& m) {
  const auto bad = aht::DistinguishabilityViolations(m);
  if (!bad.empty()) {
    std::cerr << "warning: " << bad.size()
              << " (i, j, u) triples have D(p_i^u || p_j^u) = 0; allowed for "
                 "asymmetric runs only\n";
  }
}

// Runs the request, writes the CSV and, next to a CSV file, its manifest.
int RunAndWrite(const aht::SweepRequest& req, const std::string& output) {
  const auto model = aht::LoadModel(req.model_document, req.llr_slack);
  WarnAssumptions(model);
  const auto rows = aht::RunSweep(req);
  if (output.empty()) {
    aht::WriteSweepCsv(std::cout, rows);
    return 0;
  }
  std::ofstream csv(output);
  if (!csv) throw std::runtime_error("cannot write '" + output + "'");
  aht::WriteSweepCsv(csv, rows);
  std::ofstream manifest(output + ".manifest.json");
  manifest << aht::ManifestJson(req, aht::UtcTimestamp()).dump(2) << '\n';
  std::cerr << "wrote " << output << " and " << output
            << ".manifest.json\n";
  return 0;
}

int CmdSolveGame(const CommonFlags& f) {
  const auto model = aht::ResolveModel(f.model, f.llr_slack);
  ValidateReference(model, f.reference);
  const auto s = aht::SolveGame(model, f.reference);
  const auto check = aht::VerifyMinimax(s, 1e-8);
  nlohmann::ordered_json j;
  j["reference"] = model.hypothesis_names()[s.reference];
  j["value"] = s.value;
  nlohmann::ordered_json alpha, beta;
  for (int u = 0; u < model.num_experiments(); ++u) {
    alpha[model.experiment_names()[u]] = s.alpha_star[u];
  }
  for (std::size_t a = 0; a < s.alternates.size(); ++a) {
    beta[model.hypothesis_names()[s.alternates[a]]] = s.beta_star[a];
  }
  j["alpha_star"] = alpha;
  j["beta_star"] = beta;
  nlohmann::ordered_json payoff;
  for (int u = 0; u < model.num_experiments(); ++u) {
    payoff[model.experiment_names()[u]] = s.payoff[u];
  }
  j["payoff"] = payoff;
  j["maxmin"] = check.maxmin;
  j["minmax"] = check.minmax;
  j["duality_gap"] = check.gap;
  j["warnings"] = s.warnings;
  std::cout << j.dump(2) << '\n';
  return check.pass ? 0 : 1;
}

int CmdBounds(const CommonFlags& f, const std::string& horizons,
              double epsilon) {
  const auto model = aht::ResolveModel(f.model, f.llr_slack);
  ValidateReference(model, f.reference);
  const auto game = aht::SolveGame(model, f.reference);
  const auto ns = ParseHorizons(horizons);
  std::cout << "N,epsilon,weak_rate,strong_nats,strong_db,d_star\n";
  for (const auto& r : aht::BoundsTable(model, game, ns, epsilon)) {
    std::cout << r.horizon << ',' << aht::FormatFloat(r.epsilon) << ','
              << aht::FormatFloat(r.weak_rate) << ','
              << aht::FormatFloat(r.strong_nats) << ','
              << aht::FormatFloat(r.strong_db) << ','
              << aht::FormatFloat(r.d_star) << '\n';
  }
  return 0;
}

int CmdEnumerate(const CommonFlags& f, const std::string& strategy,
                 int horizon, const std::string& threshold) {
  const auto model = aht::ResolveModel(f.model, f.llr_slack);
  ValidateReference(model, f.reference);
  const int m = model.num_hypotheses();
  const double eps = f.epsilon > 0.0 ? f.epsilon : aht::EpsilonSchedule(horizon);
  const auto game = aht::SolveGame(model, f.reference);
  const double s =
      aht::SScheduleValue(horizon, m, eps, model.llr_bound());
  const auto spec =
      aht::MakeStrategy(aht::ParseStrategyKind(strategy), model, game, s);
  double theta = 0.0;
  if (threshold == "theory") {
    theta = aht::ThresholdAsymmetric(horizon, game, eps, m, model.llr_bound());
  } else {
    try {
      theta = std::stod(threshold);
    } catch (const std::exception&) {
      throw UsageError("--threshold expects theory or a number");
    }
  }
  const auto rule = aht::AsymmetricRule(m, f.reference, theta, eps);
  const auto r = aht::EnumerateExact(model, spec, rule, horizon);
  std::cout << "hypothesis,theta,psi,phi\n";
  std::cout << model.hypothesis_names()[f.reference] << ','
            << aht::FormatFloat(theta) << ','
            << aht::FormatFloat(r.psi[f.reference]) << ','
            << aht::FormatFloat(r.phi[f.reference]) << '\n';
  std::cout << "gamma," << aht::FormatFloat(r.gamma) << '\n';
  return 0;
}

int CmdRerun(const std::string& manifest_path, int workers,
             const std::string& output) {
  std::ifstream in(manifest_path);
  if (!in) throw aht::ModelError("cannot open manifest '" + manifest_path + "'");
  const auto j = nlohmann::json::parse(in);
  auto req = aht::RequestFromManifest(j);
  if (workers > 0) req.workers = workers;
  return RunAndWrite(req, output);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixed-horizon active hypothesis testing"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(aht::kToolVersion));

  CommonFlags game_flags, bounds_flags, enum_flags, sim_flags, sweep_flags;

  auto* solve = app.add_subcommand("solve-game", "solve the max-min KL game");
  AddCommon(solve, game_flags, false);

  auto* bounds = app.add_subcommand("bounds", "converse bounds per N");
  AddCommon(bounds, bounds_flags, false);
  std::string bounds_horizons = "100:500:100";
  double bounds_eps = -1.0;
  bounds->add_option("--horizons", bounds_horizons, "start:stop:step or list");
  bounds->add_option("--epsilon", bounds_eps, "fixed eps_N");

  auto* enumerate = app.add_subcommand("enumerate", "exact small-N oracle");
  AddCommon(enumerate, enum_flags, false);
  std::string enum_strategy, enum_threshold = "theory";
  int enum_horizon = 1;
  enumerate->add_option("--strategy", enum_strategy)->required();
  enumerate->add_option("--horizon", enum_horizon)->required();
  enumerate->add_option("--threshold", enum_threshold, "theory or a number");
  enumerate->add_option("--epsilon", enum_flags.epsilon, "fixed eps_N");

  auto* simulate = app.add_subcommand("simulate", "one strategy, one horizon");
  AddCommon(simulate, sim_flags, true);
  std::string sim_strategy;
  int sim_horizon = 0;
  simulate->add_option("--strategy", sim_strategy)->required();
  simulate->add_option("--horizon", sim_horizon)
      ->required()
      ->check(CLI::PositiveNumber);

  auto* sweep = app.add_subcommand("sweep", "strategies x horizons table");
  AddCommon(sweep, sweep_flags, true);
  std::string sweep_strategies, sweep_horizons;
  sweep->add_option("--strategies", sweep_strategies, "comma-separated")
      ->required();
  sweep->add_option("--horizons", sweep_horizons, "start:stop:step or list")
      ->required();

  auto* rerun = app.add_subcommand("rerun", "replay a manifest");
  std::string manifest_path, rerun_output;
  int rerun_workers = 0;
  rerun->add_option("--manifest", manifest_path)->required();
  rerun->add_option("--workers", rerun_workers);
  rerun->add_option("--output", rerun_output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*solve) return CmdSolveGame(game_flags);
    if (*bounds) return CmdBounds(bounds_flags, bounds_horizons, bounds_eps);
    if (*enumerate) {
      return CmdEnumerate(enum_flags, enum_strategy, enum_horizon,
                          enum_threshold);
    }
    if (*simulate) {
      auto req = RequestFrom(sim_flags, "simulate");
      req.strategies = {sim_strategy};
      req.horizons = {sim_horizon};
      aht::ParseStrategyKind(sim_strategy);
      return RunAndWrite(req, sim_flags.output);
    }
    if (*sweep) {
      auto req = RequestFrom(sweep_flags, "sweep");
      req.strategies = SplitList(sweep_strategies);
      if (req.strategies.empty()) {
        throw UsageError("--strategies must name at least one strategy");
      }
      for (const auto& s : req.strategies) aht::ParseStrategyKind(s);
      req.horizons = ParseHorizons(sweep_horizons);
      return RunAndWrite(req, sweep_flags.output);
    }
    if (*rerun) return CmdRerun(manifest_path, rerun_workers, rerun_output);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return 0;
}
