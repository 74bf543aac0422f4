// Copyright 2026 The phidim Authors
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

#ifndef PHIDIM_LOG_MATH_HPP_
#define PHIDIM_LOG_MATH_HPP_

#include <cmath>
#include <limits>
#include <string>

namespace phidim {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();
inline const double kLog2 = std::log(2.0);

// log(e^a + e^b) without overflow.
inline double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = a > b ? a : b;
  const double lo = a > b ? b : a;
  return hi + std::log1p(std::exp(lo - hi));
}

// log(e^a - e^b) for a >= b; -inf when equal.
inline double log_sub(double a, double b) {
  if (b == kNegInf) return a;
  if (b >= a) return kNegInf;
  return a + std::log1p(-std::exp(b - a));
}

// log(ceil(e^a)) for a >= 0. Above 2^52 the ceiling is invisible.
inline double log_ceil(double a) {
  if (a <= 0.0) return 0.0;
  if (a > 36.0) return a;
  return std::log(std::ceil(std::exp(a) * (1.0 - 1e-14)));
}

// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

}  // namespace phidim

#endif  // PHIDIM_LOG_MATH_HPP_
