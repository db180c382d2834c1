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

#ifndef AHT_MODEL_H_
#define AHT_MODEL_H_

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aht {

// Raised for malformed model documents and for violated model invariants.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Kernel tensor indexed [hypothesis][experiment][observation].
using Kernel = std::vector<std::vector<std::vector<double>>>;

// A finite active hypothesis testing model: hypotheses 0..M-1, experiments,
// observations, kernels p_i^u(y) and a full-support prior. Immutable once
// constructed, so one instance can be shared by any number of workers.
//
// All divergences and log-likelihood ratios are in nats.
class HypothesisModel {
 public:
  // Validates every invariant and throws ModelError naming the first
  // violation (with indices). The log-likelihood-ratio bound is the tight
  // maximum of |log p_i^u(y) / p_j^u(y)| plus `llr_slack`.
  static HypothesisModel Create(std::vector<std::string> hypotheses,
                                std::vector<std::string> experiments,
                                std::vector<std::string> observations,
                                const Kernel& kernel,
                                std::vector<double> prior,
                                double llr_slack = 0.0);

  int num_hypotheses() const { return static_cast<int>(hypotheses_.size()); }
  int num_experiments() const { return static_cast<int>(experiments_.size()); }
  int num_observations() const {
    return static_cast<int>(observations_.size());
  }

  const std::vector<std::string>& hypothesis_names() const {
    return hypotheses_;
  }
  const std::vector<std::string>& experiment_names() const {
    return experiments_;
  }
  const std::vector<std::string>& observation_names() const {
    return observations_;
  }

  double prob(int i, int u, int y) const { return kernel_[Index(i, u, y)]; }
  double log_prob(int i, int u, int y) const {
    return log_kernel_[Index(i, u, y)];
  }
  // p_i^u as a span over all observations.
  std::span<const double> row(int i, int u) const {
    return {kernel_.data() + Index(i, u, 0),
            static_cast<std::size_t>(num_observations())};
  }

  std::span<const double> prior() const { return prior_; }
  std::span<const double> log_prior() const { return log_prior_; }

  // Y(u): observations with positive probability under experiment u.
  std::span<const int> support(int u) const { return supports_[u]; }
  bool in_support(int u, int y) const {
    return y >= 0 && y < num_observations() && kernel_[Index(0, u, y)] > 0.0;
  }

  double llr_bound() const { return llr_bound_; }
  double llr_slack() const { return llr_slack_; }

  int hypothesis_index(std::string_view name) const;
  int experiment_index(std::string_view name) const;
  int observation_index(std::string_view name) const;

  // Kernel in nested form, as it was given.
  Kernel kernel() const;

 private:
  HypothesisModel() = default;
  std::size_t Index(int i, int u, int y) const {
    return (static_cast<std::size_t>(i) * experiments_.size() +
            static_cast<std::size_t>(u)) *
               observations_.size() +
           static_cast<std::size_t>(y);
  }

  std::vector<std::string> hypotheses_;
  std::vector<std::string> experiments_;
  std::vector<std::string> observations_;
  std::vector<double> kernel_;
  std::vector<double> log_kernel_;
  std::vector<double> prior_;
  std::vector<double> log_prior_;
  std::vector<std::vector<int>> supports_;
  double llr_bound_ = 0.0;
  double llr_slack_ = 0.0;
};

// Parses the JSON model document:
//   {"hypotheses": [...], "experiments": [...], "observations": [...],
//    "prior": [...], "kernel": {"<exp>": {"<hyp>": [p over obs]}},
//    "llr_slack": 0.0 (optional)}
// `llr_slack_override`, when non-negative, replaces the document's slack.
HypothesisModel LoadModel(std::string_view document,
                          double llr_slack_override = -1.0);
HypothesisModel LoadModelFile(const std::string& path,
                              double llr_slack_override = -1.0);
std::string SerializeModel(const HypothesisModel& model);

// D(p || q) in nats over the common support. Throws ModelError when the
// supports differ.
double KlDivergence(std::span<const double> p, std::span<const double> q);

// D(p_i^u || p_j^u).
double KlDivergence(const HypothesisModel& model, int i, int j, int u);

// lambda_j^i(u, y) = log(p_i^u(y) / p_j^u(y)). Throws ModelError when y is
// outside Y(u).
double LogLikelihoodRatio(const HypothesisModel& model, int i, int j, int u,
                          int y);

// Pairs (i, j, u) with i != j and D(p_i^u || p_j^u) == 0, i.e. where the
// pairwise-distinguishability requirement of the symmetric problem fails.
struct Indistinguishable {
  int i;
  int j;
  int u;
};
std::vector<Indistinguishable> DistinguishabilityViolations(
    const HypothesisModel& model);

}  // namespace aht

#endif  // AHT_MODEL_H_
