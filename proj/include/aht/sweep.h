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

#ifndef AHT_SWEEP_H_
#define AHT_SWEEP_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "aht/montecarlo.h"
#include "json.hpp"

namespace aht {

inline constexpr const char* kToolName = "aht";
inline constexpr const char* kToolVersion = "1.0.0";

enum class ThresholdMode { kEmpirical, kTheory, kValue };

ThresholdMode ParseThresholdMode(const std::string& name);
std::string ThresholdModeName(ThresholdMode mode);

// Everything that determines a sweep's CSV. `workers` is recorded but does
// not affect results.
struct SweepRequest {
  std::string subcommand = "sweep";
  std::string model_source;
  std::string model_document;
  double llr_slack = -1.0;  // negative: as in the document
  std::vector<std::string> strategies;
  std::string inner = "das";  // inner law of the symmetric composite
  std::vector<int> horizons;
  int reference = 0;
  std::int64_t trials = 100000;
  std::uint64_t seed = 1;
  double epsilon = -1.0;  // nonpositive: min{0.05, 10/N}
  ThresholdMode threshold = ThresholdMode::kEmpirical;
  double threshold_value = 0.0;
  double zeta = 0.01;
  int n_prime = 0;  // 0: ceil(sqrt(N))
  double tolerance = 1e-7;
  bool allow_indistinguishable = false;
  int workers = 1;
};

struct SweepRow {
  std::string strategy;
  int horizon = 0;
  double epsilon = 0.0;
  double theta = 0.0;
  double psi_hat = 0.0;
  double psi_se = 0.0;
  double log_inv_phi = 0.0;
  double log_inv_phi_se = 0.0;
  double phi_db = 0.0;
  double gamma_hat = 0.0;
  double weak_bound = 0.0;
  double strong_bound = 0.0;
  std::uint64_t seed = 0;
};

struct HypothesisDetail {
  int hypothesis = 0;
  double theta = 0.0;
  double psi_hat = 0.0;
  double psi_se = 0.0;
  LseEstimate lse;
};

struct SweepResult {
  SweepRow row;
  // One entry for asymmetric rows, one per hypothesis for symmetric rows.
  std::vector<HypothesisDetail> detail;
};

// Throws ModelError, InferenceError or std::invalid_argument on bad input.
std::vector<SweepResult> RunSweep(const SweepRequest& request);

// Same computation for a single (strategy, N) pair.
SweepResult RunSweepRow(const SweepRequest& request,
                        const HypothesisModel& model,
                        const std::string& strategy, int horizon);

extern const char* const kSweepCsvHeader;
void WriteSweepCsv(std::ostream& os, const std::vector<SweepResult>& rows);

nlohmann::ordered_json ManifestJson(const SweepRequest& request,
                                    const std::string& timestamp);
SweepRequest RequestFromManifest(const nlohmann::json& manifest);

std::string UtcTimestamp();

}  // namespace aht

#endif  // AHT_SWEEP_H_
