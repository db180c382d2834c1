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

#include "aht/builtin_models.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace aht {
namespace {

// Rows are [P(Y=0), P(Y=1)].
constexpr const char* kTable1 = R"({
  "hypotheses": ["0", "1", "2"],
  "experiments": ["A", "B"],
  "observations": ["0", "1"],
  "prior": [0.3333333333333333, 0.3333333333333333, 0.3333333333333333],
  "kernel": {
    "A": {"0": [0.6, 0.4], "1": [0.4, 0.6], "2": [0.6, 0.4]},
    "B": {"0": [0.6, 0.4], "1": [0.6, 0.4], "2": [0.4, 0.6]}
  }
})";

constexpr const char* kTable2 = R"({
  "hypotheses": ["0", "1", "2"],
  "experiments": ["A", "B", "C", "D"],
  "observations": ["0", "1"],
  "prior": [0.3333333333333333, 0.3333333333333333, 0.3333333333333333],
  "kernel": {
    "A": {"0": [0.6, 0.4], "1": [0.4, 0.6], "2": [0.6, 0.4]},
    "B": {"0": [0.6, 0.4], "1": [0.6, 0.4], "2": [0.4, 0.6]},
    "C": {"0": [0.598, 0.402], "1": [0.402, 0.598], "2": [0.72, 0.28]},
    "D": {"0": [0.598, 0.402], "1": [0.72, 0.28], "2": [0.402, 0.598]}
  }
})";

bool SameRow(std::span<const double> r, double p0, double p1) {
  return r.size() == 2 && r[0] == p0 && r[1] == p1;
}

}  // namespace

std::string BinaryAnomalyDocument(double nu) {
  if (!(nu > 0.0 && nu < 1.0)) {
    throw ModelError("nu must lie in (0, 1)");
  }
  nlohmann::ordered_json doc;
  const double lo = 1.0 - nu;
  doc["hypotheses"] = {"0", "1", "2"};
  doc["experiments"] = {"A", "B"};
  doc["observations"] = {"0", "1"};
  doc["prior"] = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  const std::vector<double> quiet = {nu, lo};
  const std::vector<double> loud = {lo, nu};
  doc["kernel"]["A"] = {{"0", quiet}, {"1", loud}, {"2", quiet}};
  doc["kernel"]["B"] = {{"0", quiet}, {"1", quiet}, {"2", loud}};
  return doc.dump(2);
}

std::string FourSensorAnomalyDocument() { return kTable2; }

bool IsBuiltinModel(std::string_view name) {
  return name == "table1" || name == "table2";
}

std::string BuiltinModelDocument(std::string_view name) {
  if (name == "table1") return kTable1;
  if (name == "table2") return kTable2;
  throw ModelError("unknown built-in model '" + std::string(name) + "'");
}

std::string ResolveModelDocument(const std::string& name_or_path) {
  if (IsBuiltinModel(name_or_path)) return BuiltinModelDocument(name_or_path);
  std::ifstream in(name_or_path);
  if (!in) throw ModelError("cannot open model file '" + name_or_path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

HypothesisModel ResolveModel(const std::string& name_or_path,
                             double llr_slack_override) {
  return LoadModel(ResolveModelDocument(name_or_path), llr_slack_override);
}

std::optional<double> BinaryAnomalyParameter(const HypothesisModel& model) {
  if (model.num_hypotheses() != 3 || model.num_experiments() != 2 ||
      model.num_observations() != 2) {
    return std::nullopt;
  }
  const double nu = model.prob(1, 0, 1);
  const double lo = model.prob(0, 0, 1);
  if (!(nu > 0.5 && nu < 1.0)) return std::nullopt;
  const double quiet0 = model.prob(0, 0, 0);
  // quiet = [1 - lo, lo], loud = [1 - nu, nu] with lo = 1 - nu.
  if (std::abs(lo - (1.0 - nu)) > 1e-12 ||
      std::abs(quiet0 - nu) > 1e-12) {
    return std::nullopt;
  }
  const double loud0 = model.prob(1, 0, 0);
  auto quiet = [&](int i, int u) {
    return SameRow(model.row(i, u), quiet0, lo);
  };
  auto loud = [&](int i, int u) {
    return SameRow(model.row(i, u), loud0, nu);
  };
  if (!(quiet(0, 0) && loud(1, 0) && quiet(2, 0) && quiet(0, 1) &&
        quiet(1, 1) && loud(2, 1))) {
    return std::nullopt;
  }
  for (double p : model.prior()) {
    if (std::abs(p - 1.0 / 3.0) > 1e-12) return std::nullopt;
  }
  return nu;
}

}  // namespace aht
