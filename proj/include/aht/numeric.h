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

#ifndef AHT_NUMERIC_H_
#define AHT_NUMERIC_H_

#include <cstdint>
#include <random>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace aht {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Max-shifted log(sum(exp(x))). Empty input and all -inf input give -inf.
double LogSumExp(std::span<const double> x);
double LogSumExp(double a, double b);

// Cross entropy H(p, q) = -sum p log q over entries with p > 0.
double CrossEntropy(std::span<const double> p, std::span<const double> q);

// 10 log10(exp(nats)).
double NatsToDb(double nats);

// True when the entries are nonnegative and sum to one within tol.
bool IsDistribution(std::span<const double> p, double tol);

// %.9g formatting used for every CSV and report float.
std::string FormatFloat(double value);

// SplitMix64 finalizer; used to derive per-trial seeds.
std::uint64_t Mix64(std::uint64_t x);
std::uint64_t HashSeed(std::uint64_t master, std::uint64_t a, std::uint64_t b);

// Least-squares slope of y against x.
using Rng = std::mt19937_64;

// Uniform on [0, 1) from the top 53 bits of one draw.
inline double Uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Inverse-CDF draw from a distribution; consumes exactly one draw.
int SampleIndex(std::span<const double> p, Rng& rng);

double FitSlope(std::span<const double> x, std::span<const double> y);

}  // namespace aht

#endif  // AHT_NUMERIC_H_
