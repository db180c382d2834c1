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

#include "aht/simplex.h"

#include <stdexcept>

namespace aht {
namespace {
constexpr double kPivotTol = 1e-12;
}  // namespace

LpResult SolveLp(const std::vector<std::vector<double>>& a,
                 const std::vector<double>& b, const std::vector<double>& c) {
  const int m = static_cast<int>(a.size());
  const int n = static_cast<int>(c.size());
  if (static_cast<int>(b.size()) != m) {
    throw std::invalid_argument("SolveLp: row count mismatch");
  }
  for (int r = 0; r < m; ++r) {
    if (static_cast<int>(a[r].size()) != n) {
      throw std::invalid_argument("SolveLp: column count mismatch");
    }
    if (b[r] < 0.0) throw std::invalid_argument("SolveLp: b must be >= 0");
  }

  // Tableau rows 0..m-1 are constraints over n structural plus m slack
  // columns and the rhs; row m holds the reduced costs c_j - z_j.
  const int width = n + m + 1;
  std::vector<std::vector<double>> t(m + 1, std::vector<double>(width, 0.0));
  std::vector<int> basis(m);
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j < n; ++j) t[r][j] = a[r][j];
    t[r][n + r] = 1.0;
    t[r][width - 1] = b[r];
    basis[r] = n + r;
  }
  for (int j = 0; j < n; ++j) t[m][j] = c[j];

  LpResult result;
  while (true) {
    int enter = -1;
    for (int j = 0; j < n + m; ++j) {
      if (t[m][j] > kPivotTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;

    int leave = -1;
    double best = 0.0;
    for (int r = 0; r < m; ++r) {
      if (t[r][enter] <= kPivotTol) continue;
      const double ratio = t[r][width - 1] / t[r][enter];
      if (leave < 0 || ratio < best - 1e-15 ||
          (ratio <= best + 1e-15 && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave < 0) return result;  // unbounded

    const double p = t[leave][enter];
    for (double& v : t[leave]) v /= p;
    for (int r = 0; r <= m; ++r) {
      if (r == leave) continue;
      const double f = t[r][enter];
      if (f == 0.0) continue;
      for (int j = 0; j < width; ++j) t[r][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
    ++result.pivots;
  }

  result.optimal = true;
  result.x.assign(n, 0.0);
  for (int r = 0; r < m; ++r) {
    if (basis[r] < n) result.x[basis[r]] = t[r][width - 1];
  }
  result.dual.assign(m, 0.0);
  for (int r = 0; r < m; ++r) result.dual[r] = -t[m][n + r];
  result.objective = 0.0;
  for (int j = 0; j < n; ++j) result.objective += c[j] * result.x[j];
  return result;
}

}  // namespace aht
