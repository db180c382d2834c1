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

#ifndef AHT_BUILTIN_MODELS_H_
#define AHT_BUILTIN_MODELS_H_

#include <optional>
#include <string>
#include <string_view>

#include "aht/model.h"

namespace aht {

// Two-sensor anomaly detection: hypothesis 0 is "no anomaly", 1 is an anomaly
// near sensor A, 2 near sensor B. P[Y=1 | X, U] is nu for the sensor next
// to the anomaly and 1 - nu otherwise. Uniform prior.
std::string BinaryAnomalyDocument(double nu);

// The same system with two extra cross-talk sensors C and D.
std::string FourSensorAnomalyDocument();

// Named built-in models: "table1" (two sensors, nu = 0.6) and "table2".
bool IsBuiltinModel(std::string_view name);
std::string BuiltinModelDocument(std::string_view name);

// Resolves a built-in name or a path to a model file.
HypothesisModel ResolveModel(const std::string& name_or_path,
                             double llr_slack_override = -1.0);
std::string ResolveModelDocument(const std::string& name_or_path);

// Returns nu when `model` is the two-sensor family with nu in (0.5, 1):
// 3 hypotheses, 2 experiments, binary observations, the layout of
// BinaryAnomalyDocument and the uniform prior.
std::optional<double> BinaryAnomalyParameter(const HypothesisModel& model);

}  // namespace aht

#endif  // AHT_BUILTIN_MODELS_H_
