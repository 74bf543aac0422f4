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

#ifndef PHIDIM_COVERS_HPP_
#define PHIDIM_COVERS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "phidim/cantor_schedule.hpp"
#include "phidim/interval.hpp"
#include "phidim/set_model.hpp"

namespace phidim {

// Allowed cover diameters [lo, hi], as natural logs.
struct ScaleWindow {
  double log_lo = 0.0;
  double log_hi = 0.0;

  static ScaleWindow from_logs(double log_lo, double log_hi);
  static ScaleWindow from_values(double lo, double hi);

  double lo() const;
  double hi() const;
};

enum class CoverMethod {
  kExactDp,
  kSingleLevel,
  kTwoScaleAnalytic,
  kProduct,
  kExhaustive,
};

std::string_view to_string(CoverMethod m);

// Bracket of log min sum |U_i|^s over covers with diameters in the window.
struct CoverCost {
  double log_lower = 0.0;
  double log_upper = 0.0;
  CoverMethod method = CoverMethod::kExactDp;
  std::optional<std::vector<Interval>> pieces;

  bool exact() const { return log_lower == log_upper; }
};

struct OracleOptions {
  // Use the exact DP on sequence sets instead of the two-scale formula.
  bool prefer_exact = false;
  std::size_t max_dp_elements = std::size_t{1} << 20;
};

// Exact minimum over interval covers of a sorted skeleton. Every skeleton
// interval must be no longer than the window's hi.
CoverCost cover_cost_dp(std::span<const Interval> skel, ScaleWindow w, double s,
                        bool want_pieces = false);

// Brute force over all set partitions of at most 8 points, with diameters
// restricted to the given grid.
CoverCost cover_cost_exhaustive(std::span<const double> points, ScaleWindow w,
                                double s, std::span<const double> diameters);

CoverCost cover_cost_cantor(const CantorSchedule& sched, ScaleWindow w,
                            double s);

// log sup over d in the window of M(d) / d^s, where M(d) bounds the mass a
// set of diameter d can carry under any measure giving 2^-level to each
// interval of the given level.
double cantor_log_sup_mass_ratio(const CantorSchedule& sched, ScaleWindow w,
                                 double s, std::int64_t level);

CoverCost cover_cost_sequence_analytic(double p, ScaleWindow w, double s);

// Uniform grid on [0, 1] with spacing equal to the window's lo.
CoverCost cover_cost_dense(ScaleWindow w, double s);

CoverCost cover_cost_product(const SetModel& a, const SetModel& b,
                             ScaleWindow w, double s,
                             const OracleOptions& opt = {});

CoverCost cover_cost(const SetModel& model, ScaleWindow w, double s,
                     const OracleOptions& opt = {});

// Splits intervals longer than max_len into equal pieces.
Skeleton subdivide(std::span<const Interval> skel, double max_len);

}  // namespace phidim

#endif  // PHIDIM_COVERS_HPP_
