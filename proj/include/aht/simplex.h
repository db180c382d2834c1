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

#ifndef AHT_SIMPLEX_H_
#define AHT_SIMPLEX_H_

#include <vector>

namespace aht {

struct LpResult {
  bool optimal = false;  // false when unbounded
  double objective = 0.0;
  std::vector<double> x;
  // Dual values, one per constraint row.
  std::vector<double> dual;
  int pivots = 0;
};

// Dense primal simplex for
//   maximize c'x  subject to  A x <= b, x >= 0
// with b >= 0, so the slack basis is feasible. Bland's rule picks both the
// entering and the leaving variable, which rules out cycling and makes the
// returned vertex a deterministic function of the input.
LpResult SolveLp(const std::vector<std::vector<double>>& a,
                 const std::vector<double>& b, const std::vector<double>& c);

}  // namespace aht

#endif  // AHT_SIMPLEX_H_
