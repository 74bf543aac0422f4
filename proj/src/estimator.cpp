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

#include "phidim/estimator.hpp"

#include <algorithm>
#include <cmath>

#include "phidim/error.hpp"
#include "phidim/log_math.hpp"

namespace phidim {
namespace {

// Largest s in [0, cap] with f(s) > 0 for a nonincreasing f, to within tol.
template <class F>
double last_positive(F f, double cap, double tol) {
  double lo = 0.0;
  double hi = cap;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ExponentBracket critical_exponent_window(const SetModel& model, ScaleWindow w,
                                         double tol, const OracleOptions& opt) {
  if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");
  const double cap = model.ambient_dimension();
  const CoverCost at_zero = cover_cost(model, w, 0.0, opt);
  const CoverCost at_cap = cover_cost(model, w, cap, opt);
  if (at_zero.log_lower <= 0.0 && at_cap.log_upper > 0.0) {
    throw IndeterminateError(
        "cost bracket straddles 1 over the whole exponent range",
        at_zero.log_lower, at_cap.log_upper);
  }
  ExponentBracket out;
  if (at_zero.log_lower <= 0.0) {
    out.s_lower = 0.0;
  } else if (at_cap.log_lower > 0.0) {
    out.s_lower = cap;
  } else {
    out.s_lower = last_positive(
        [&](double s) { return cover_cost(model, w, s, opt).log_lower; }, cap,
        tol);
  }
  if (at_zero.log_upper <= 0.0) {
    out.s_upper = 0.0;
  } else if (at_cap.log_upper > 0.0) {
    out.s_upper = cap;
  } else {
    out.s_upper = last_positive(
        [&](double s) { return cover_cost(model, w, s, opt).log_upper; }, cap,
        tol);
  }
  out.s_upper = std::max(out.s_upper, out.s_lower);
  return out;
}

ExponentBracket critical_exponent(const SetModel& model,
                                  const ScaleFunction& phi, double log_delta,
                                  double tol, const OracleOptions& opt) {
  const double log_lo = phi.eval_log(log_delta);
  return critical_exponent_window(model, ScaleWindow::from_logs(log_lo, log_delta),
                                  tol, opt);
}

Extrapolation extrapolate(std::span<const ProfileRow> rows) {
  if (rows.empty()) throw ConfigError("profile has no rows");
  const std::size_t tail = (rows.size() + 2) / 3;
  Extrapolation e;
  e.upper_lower = e.upper_upper = kNegInf;
  e.lower_lower = e.lower_upper = kPosInf;
  for (std::size_t i = rows.size() - tail; i < rows.size(); ++i) {
    e.upper_lower = std::max(e.upper_lower, rows[i].s_lower);
    e.upper_upper = std::max(e.upper_upper, rows[i].s_upper);
    e.lower_lower = std::min(e.lower_lower, rows[i].s_lower);
    e.lower_upper = std::min(e.lower_upper, rows[i].s_upper);
  }
  return e;
}

DimensionProfile dimension_profile(const SetModel& model,
                                   const ScaleFunction& phi,
                                   const DeltaGrid& grid, double tol,
                                   const OracleOptions& opt) {
  const std::vector<double> marks = model.markers();
  const DeltaGrid g = grid.with_scales(marks);
  DimensionProfile prof;
  prof.phi = phi.describe();
  prof.model_id = model.id();
  prof.grid_spec = g.spec();
  prof.tol = tol;
  for (double ld : g.log_deltas()) {
    const ExponentBracket b = critical_exponent(model, phi, ld, tol, opt);
    prof.rows.push_back({ld, b.s_lower, b.s_upper});
  }
  prof.extrapolation = extrapolate(prof.rows);
  return prof;
}

std::vector<DimensionProfile> theta_profile(const SetModel& model,
                                            std::span<const double> thetas,
                                            const DeltaGrid& grid, double tol,
                                            const OracleOptions& opt) {
  std::vector<DimensionProfile> out;
  for (double theta : thetas) {
    const ScaleFunction phi = theta == 1.0 ? ScaleFunction::log_corrected()
                                           : ScaleFunction::power_law(theta);
    out.push_back(dimension_profile(model, phi, grid, tol, opt));
  }
  return out;
}

}  // namespace phidim
