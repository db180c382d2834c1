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

#include <cmath>

#include "aht/montecarlo.h"

namespace aht {
namespace {

struct Walker {
  const HypothesisModel& model;
  const Policy& policy;
  int horizon;
  const std::function<void(const Trajectory&, std::span<const double>)>&
      visit;

  void Walk(const Trajectory& t, const std::vector<double>& log_path) const {
    if (t.steps() == horizon) {
      visit(t, log_path);
      return;
    }
    const int u = policy(t.belief());
    for (int y : model.support(u)) {
      Trajectory child = t;
      child.Step(u, y);
      std::vector<double> lp = log_path;
      for (int k = 0; k < model.num_hypotheses(); ++k) {
        lp[k] += model.log_prob(k, u, y);
      }
      Walk(child, lp);
    }
  }
};

}  // namespace

void EnumeratePaths(
    const HypothesisModel& model, const Policy& policy, int horizon,
    int reference, const std::optional<std::vector<double>>& beta_star,
    const std::function<void(const Trajectory&, std::span<const double>)>&
        visit) {
  Trajectory root(model, reference, beta_star);
  Walker w{model, policy, horizon, visit};
  w.Walk(root, std::vector<double>(model.num_hypotheses(), 0.0));
}

ExactResult EnumerateExact(const HypothesisModel& model,
                           const StrategySpec& spec, const InferenceRule& rule,
                           int horizon, int cap) {
  if (horizon < 0 || horizon > cap) {
    throw SimulationError("enumeration horizon " + std::to_string(horizon) +
                          " exceeds the cap of " + std::to_string(cap));
  }
  if (!IsDeterministic(spec)) {
    throw SimulationError("exact enumeration needs a deterministic strategy");
  }
  const int m = model.num_hypotheses();
  // declared[x][d] = P_x(decision = d).
  std::vector<std::vector<double>> declared(m, std::vector<double>(m, 0.0));
  const Policy policy = [&](const Belief& b) {
    Rng unused(0);
    return SelectExperiment(spec, model, b, unused);
  };
  const int reference = spec.reference >= 0 ? spec.reference : 0;
  EnumeratePaths(model, policy, horizon, reference, std::nullopt,
                 [&](const Trajectory& t, std::span<const double> lp) {
                   const int d = Infer(t.belief(), t.prior(), rule);
                   if (d == kInconclusive) return;
                   for (int x = 0; x < m; ++x) {
                     declared[x][d] += std::exp(lp[x]);
                   }
                 });
  ExactResult r;
  r.psi.assign(m, 0.0);
  r.phi.assign(m, 0.0);
  const auto prior = model.prior();
  for (int i = 0; i < m; ++i) {
    r.psi[i] = declared[i][i];
    for (int x = 0; x < m; ++x) {
      if (x != i) r.phi[i] += prior[x] / (1.0 - prior[i]) * declared[x][i];
    }
    r.gamma += (1.0 - prior[i]) * r.phi[i];
  }
  return r;
}

}  // namespace aht
