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

#include "aht/model.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace aht {
namespace {

constexpr double kSumTolerance = 1e-12;

std::string Where(int i, int u) {
  std::ostringstream os;
  os << "(hypothesis " << i << ", experiment " << u << ")";
  return os.str();
}

void CheckUniqueNonEmpty(const std::vector<std::string>& names,
                         const char* what) {
  if (names.empty()) {
    throw ModelError(std::string("model needs at least one ") + what);
  }
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (!seen.insert(n).second) {
      throw ModelError(std::string("duplicate ") + what + " label '" + n +
                       "'");
    }
  }
}

int FindIndex(const std::vector<std::string>& names, std::string_view name,
              const char* what) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) {
    throw ModelError(std::string("unknown ") + what + " '" +
                     std::string(name) + "'");
  }
  return static_cast<int>(it - names.begin());
}

}  // namespace

HypothesisModel HypothesisModel::Create(std::vector<std::string> hypotheses,
                                        std::vector<std::string> experiments,
                                        std::vector<std::string> observations,
                                        const Kernel& kernel,
                                        std::vector<double> prior,
                                        double llr_slack) {
  if (hypotheses.size() < 2) {
    throw ModelError("model needs at least two hypotheses");
  }
  CheckUniqueNonEmpty(hypotheses, "hypothesis");
  CheckUniqueNonEmpty(experiments, "experiment");
  CheckUniqueNonEmpty(observations, "observation");
  if (!(llr_slack >= 0.0) || !std::isfinite(llr_slack)) {
    throw ModelError("llr_slack must be a finite nonnegative number");
  }

  HypothesisModel m;
  m.hypotheses_ = std::move(hypotheses);
  m.experiments_ = std::move(experiments);
  m.observations_ = std::move(observations);
  const int num_h = m.num_hypotheses();
  const int num_u = m.num_experiments();
  const int num_y = m.num_observations();

  if (static_cast<int>(kernel.size()) != num_h) {
    throw ModelError("kernel has " + std::to_string(kernel.size()) +
                     " hypothesis blocks, expected " + std::to_string(num_h));
  }
  m.kernel_.assign(static_cast<std::size_t>(num_h) * num_u * num_y, 0.0);
  for (int i = 0; i < num_h; ++i) {
    if (static_cast<int>(kernel[i].size()) != num_u) {
      throw ModelError("kernel for hypothesis " + std::to_string(i) +
                       " has wrong number of experiments");
    }
    for (int u = 0; u < num_u; ++u) {
      const auto& row = kernel[i][u];
      if (static_cast<int>(row.size()) != num_y) {
        throw ModelError("kernel row " + Where(i, u) +
                         " has wrong number of observations");
      }
      double sum = 0.0;
      for (int y = 0; y < num_y; ++y) {
        const double p = row[y];
        if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
          throw ModelError("kernel entry " + Where(i, u) + " observation " +
                           std::to_string(y) + " is not a probability");
        }
        m.kernel_[m.Index(i, u, y)] = p;
        sum += p;
      }
      if (std::abs(sum - 1.0) > kSumTolerance) {
        std::ostringstream os;
        os.precision(17);
        os << "kernel row " << Where(i, u) << " sums to " << sum;
        throw ModelError(os.str());
      }
    }
  }

  m.supports_.resize(num_u);
  for (int u = 0; u < num_u; ++u) {
    for (int y = 0; y < num_y; ++y) {
      const bool positive = m.kernel_[m.Index(0, u, y)] > 0.0;
      for (int i = 1; i < num_h; ++i) {
        if ((m.kernel_[m.Index(i, u, y)] > 0.0) != positive) {
          throw ModelError("common-support violation: experiment " +
                           std::to_string(u) + " observation " +
                           std::to_string(y) + " differs between hypothesis 0 "
                           "and hypothesis " + std::to_string(i));
        }
      }
      if (positive) m.supports_[u].push_back(y);
    }
  }

  if (static_cast<int>(prior.size()) != num_h) {
    throw ModelError("prior has " + std::to_string(prior.size()) +
                     " entries, expected " + std::to_string(num_h));
  }
  double prior_sum = 0.0;
  for (int i = 0; i < num_h; ++i) {
    if (!std::isfinite(prior[i]) || !(prior[i] > 0.0)) {
      throw ModelError("prior lacks full support: entry " +
                       std::to_string(i) + " is not positive");
    }
    prior_sum += prior[i];
  }
  if (std::abs(prior_sum - 1.0) > kSumTolerance) {
    throw ModelError("prior does not sum to 1");
  }
  m.prior_ = std::move(prior);

  m.log_kernel_.resize(m.kernel_.size());
  std::transform(m.kernel_.begin(), m.kernel_.end(), m.log_kernel_.begin(),
                 [](double p) { return p > 0.0 ? std::log(p) : -INFINITY; });
  m.log_prior_.resize(m.prior_.size());
  std::transform(m.prior_.begin(), m.prior_.end(), m.log_prior_.begin(),
                 [](double p) { return std::log(p); });

  double bound = 0.0;
  for (int u = 0; u < num_u; ++u) {
    for (int y : m.supports_[u]) {
      double lo = INFINITY, hi = -INFINITY;
      for (int i = 0; i < num_h; ++i) {
        lo = std::min(lo, m.log_kernel_[m.Index(i, u, y)]);
        hi = std::max(hi, m.log_kernel_[m.Index(i, u, y)]);
      }
      bound = std::max(bound, hi - lo);
    }
  }
  m.llr_slack_ = llr_slack;
  m.llr_bound_ = bound + llr_slack;
  if (!std::isfinite(m.llr_bound_)) {
    throw ModelError("log-likelihood-ratio bound is not finite");
  }
  return m;
}

int HypothesisModel::hypothesis_index(std::string_view name) const {
  return FindIndex(hypotheses_, name, "hypothesis");
}
int HypothesisModel::experiment_index(std::string_view name) const {
  return FindIndex(experiments_, name, "experiment");
}
int HypothesisModel::observation_index(std::string_view name) const {
  return FindIndex(observations_, name, "observation");
}

Kernel HypothesisModel::kernel() const {
  Kernel k(num_hypotheses());
  for (int i = 0; i < num_hypotheses(); ++i) {
    k[i].resize(num_experiments());
    for (int u = 0; u < num_experiments(); ++u) {
      auto r = row(i, u);
      k[i][u].assign(r.begin(), r.end());
    }
  }
  return k;
}

HypothesisModel LoadModel(std::string_view document,
                          double llr_slack_override) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw ModelError(std::string("model parse failure: ") + e.what());
  }
  try {
    auto names = [&](const char* key) {
      if (!doc.contains(key)) {
        throw ModelError(std::string("model document missing '") + key +
                         "'");
      }
      return doc.at(key).get<std::vector<std::string>>();
    };
    auto hypotheses = names("hypotheses");
    auto experiments = names("experiments");
    auto observations = names("observations");
    if (!doc.contains("prior")) {
      throw ModelError("model document missing 'prior'");
    }
    auto prior = doc.at("prior").get<std::vector<double>>();
    if (!doc.contains("kernel") || !doc.at("kernel").is_object()) {
      throw ModelError("model document missing 'kernel' object");
    }
    const auto& kj = doc.at("kernel");
    Kernel kernel(hypotheses.size(),
                  std::vector<std::vector<double>>(experiments.size()));
    for (std::size_t u = 0; u < experiments.size(); ++u) {
      if (!kj.contains(experiments[u])) {
        throw ModelError("kernel missing experiment '" + experiments[u] +
                         "'");
      }
      const auto& block = kj.at(experiments[u]);
      for (std::size_t i = 0; i < hypotheses.size(); ++i) {
        if (!block.contains(hypotheses[i])) {
          throw ModelError("kernel for experiment '" + experiments[u] +
                           "' missing hypothesis '" + hypotheses[i] + "'");
        }
        kernel[i][u] = block.at(hypotheses[i]).get<std::vector<double>>();
      }
    }
    double slack = doc.value("llr_slack", 0.0);
    if (llr_slack_override >= 0.0) slack = llr_slack_override;
    return HypothesisModel::Create(std::move(hypotheses),
                                   std::move(experiments),
                                   std::move(observations), kernel,
                                   std::move(prior), slack);
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("model parse failure: ") + e.what());
  }
}

HypothesisModel LoadModelFile(const std::string& path,
                              double llr_slack_override) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return LoadModel(ss.str(), llr_slack_override);
}

std::string SerializeModel(const HypothesisModel& model) {
  nlohmann::ordered_json doc;
  doc["hypotheses"] = model.hypothesis_names();
  doc["experiments"] = model.experiment_names();
  doc["observations"] = model.observation_names();
  doc["prior"] = std::vector<double>(model.prior().begin(),
                                     model.prior().end());
  nlohmann::ordered_json kernel = nlohmann::ordered_json::object();
  for (int u = 0; u < model.num_experiments(); ++u) {
    nlohmann::ordered_json block = nlohmann::ordered_json::object();
    for (int i = 0; i < model.num_hypotheses(); ++i) {
      auto r = model.row(i, u);
      block[model.hypothesis_names()[i]] = std::vector<double>(r.begin(),
                                                               r.end());
    }
    kernel[model.experiment_names()[u]] = std::move(block);
  }
  doc["kernel"] = std::move(kernel);
  doc["llr_slack"] = model.llr_slack();
  return doc.dump(2);
}

double KlDivergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw ModelError("KL divergence: dimension mismatch");
  }
  double d = 0.0;
  for (std::size_t y = 0; y < p.size(); ++y) {
    if ((p[y] > 0.0) != (q[y] > 0.0)) {
      throw ModelError("KL divergence: mismatched supports at observation " +
                       std::to_string(y));
    }
    if (p[y] > 0.0) d += p[y] * std::log(p[y] / q[y]);
  }
  return std::max(d, 0.0);
}

double KlDivergence(const HypothesisModel& model, int i, int j, int u) {
  double d = 0.0;
  for (int y : model.support(u)) {
    d += model.prob(i, u, y) * (model.log_prob(i, u, y) -
                                model.log_prob(j, u, y));
  }
  return std::max(d, 0.0);
}

double LogLikelihoodRatio(const HypothesisModel& model, int i, int j, int u,
                          int y) {
  if (!model.in_support(u, y)) {
    throw ModelError("observation " + std::to_string(y) +
                     " is outside the support of experiment " +
                     std::to_string(u));
  }
  return model.log_prob(i, u, y) - model.log_prob(j, u, y);
}

std::vector<Indistinguishable> DistinguishabilityViolations(
    const HypothesisModel& model) {
  std::vector<Indistinguishable> out;
  for (int u = 0; u < model.num_experiments(); ++u) {
    for (int i = 0; i < model.num_hypotheses(); ++i) {
      for (int j = 0; j < model.num_hypotheses(); ++j) {
        if (i != j && !(KlDivergence(model, i, j, u) > 0.0)) {
          out.push_back({i, j, u});
        }
      }
    }
  }
  return out;
}

}  // namespace aht
