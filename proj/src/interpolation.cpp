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

#include "phidim/interpolation.hpp"

#include <algorithm>
#include <cmath>

#include "phidim/error.hpp"
#include "phidim/log_math.hpp"

namespace phidim {
namespace {

constexpr double kFloorFactor = 64.0;
constexpr double kOrderTol = 1e-9;

double search_floor(const SetModel& model, double log_delta,
                    const OracleOptions& opt) {
  const double f = model.log_scale_floor(opt.prefer_exact);
  return std::isfinite(f) ? std::min(f, log_delta - 1.0)
                          : kFloorFactor * log_delta;
}

}  // namespace

std::optional<double> phi_s_at(const SetModel& model, double s,
                               double log_delta, double tol, double budget,
                               const OracleOptions& opt) {
  if (!(-log_delta > 3.0)) {
    throw DomainError("phi_s needs -log delta > 3");
  }
  if (!(budget > 0.0) || !(tol > 0.0)) {
    throw InputError("budget and tolerance must be positive");
  }
  const double log_budget = std::log(budget);
  const auto feasible = [&](double lx) {
    return cover_cost(model, ScaleWindow{lx, log_delta}, s, opt).log_upper <=
           log_budget;
  };
  double hi = log_delta - std::log(-log_delta);
  if (feasible(hi)) return hi;
  double lo = search_floor(model, log_delta, opt);
  if (lo >= hi || !feasible(lo)) return std::nullopt;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

ScaleFunction PhiSTable::as_function() const {
  if (rows.size() < 2) {
    throw InvalidFunctionError("phi_s table needs at least two rows");
  }
  Tabulated t;
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    t.log_delta.push_back(it->log_delta);
    t.log_phi.push_back(it->log_phi);
  }
  return ScaleFunction::phi_s(s, std::move(t), model_id);
}

PhiSTable phi_s_function(const SetModel& model, double s, const DeltaGrid& grid,
                         double tol, double budget, const OracleOptions& opt) {
  const auto marks = model.markers();
  const DeltaGrid g = grid.with_scales(marks);
  PhiSTable t;
  t.s = s;
  t.budget = budget;
  t.model_id = model.id();
  t.grid_spec = g.spec();
  const auto lds = g.log_deltas();
  for (auto it = lds.rbegin(); it != lds.rend(); ++it) {
    const double ld = *it;
    const auto v = phi_s_at(model, s, ld, tol, budget, opt);
    if (!v) {
      t.dropped_log_deltas.insert(t.dropped_log_deltas.begin(), ld);
      continue;
    }
    double lp = *v;
    if (!t.rows.empty() && lp < t.rows.back().log_phi) {
      if (t.rows.back().log_phi - lp > tol) {
        t.diagnostics.push_back("raised to keep Phi_s monotone at log delta " +
                                format_double(ld));
      }
      lp = t.rows.back().log_phi;
    }
    t.rows.push_back({ld, lp});
  }
  std::reverse(t.rows.begin(), t.rows.end());
  if (!t.dropped_log_deltas.empty()) {
    t.diagnostics.push_back(std::to_string(t.dropped_log_deltas.size()) +
                            " scales dropped: cost budget exceeded");
  }
  return t;
}

InterpolationReport verify_interpolation(const SetModel& model,
                                         std::span<const double> s_grid,
                                         const DeltaGrid& grid, double tol,
                                         double slack,
                                         const OracleOptions& opt) {
  if (s_grid.empty()) throw InputError("empty s grid");
  if (!std::is_sorted(s_grid.begin(), s_grid.end())) {
    throw InputError("s grid must be increasing");
  }
  InterpolationReport rep;
  rep.slack = slack;
  rep.grid_spec = grid.spec();
  const DimensionProfile box =
      dimension_profile(model, ScaleFunction::log_corrected(), grid, tol, opt);
  rep.box_lower = box.extrapolation.lower_estimate();
  rep.box_upper = box.extrapolation.upper_estimate();

  const auto distance = [](double x, double lo, double hi) {
    return std::max({0.0, lo - x, x - hi});
  };
  bool all_rows = true;
  for (double s : s_grid) {
    PhiSTable table = phi_s_function(model, s, grid, tol, 1.0, opt);
    InterpolationRow row;
    row.s = s;
    row.rows_used = table.rows.size();
    if (table.rows.size() >= 3) {
      std::vector<ProfileRow> prof;
      const ScaleFunction phi = table.as_function();
      for (const PhiSRow& r : table.rows) {
        const ExponentBracket b = critical_exponent(model, phi, r.log_delta, tol, opt);
        prof.push_back({r.log_delta, b.s_lower, b.s_upper});
      }
      row.estimate = extrapolate(prof);
      row.upper_pass = distance(s, row.estimate.upper_lower,
                                row.estimate.upper_upper) <= slack;
      row.lower_pass = distance(std::min(s, rep.box_lower),
                                row.estimate.lower_lower,
                                row.estimate.lower_upper) <= slack;
    }
    all_rows = all_rows && row.upper_pass;
    rep.rows.push_back(row);
    rep.tables.push_back(std::move(table));
  }

  rep.monotone_upper = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    if (rep.rows[i].estimate.upper_estimate() <
        rep.rows[i - 1].estimate.upper_estimate() - 2.0 * tol) {
      rep.monotone_upper = false;
    }
  }
  rep.tables_ordered = true;
  for (std::size_t i = 1; i < rep.tables.size(); ++i) {
    const PhiSTable& a = rep.tables[i - 1];
    const PhiSTable& b = rep.tables[i];
    for (const PhiSRow& ra : a.rows) {
      for (const PhiSRow& rb : b.rows) {
        if (ra.log_delta == rb.log_delta && ra.log_phi > rb.log_phi + kOrderTol) {
          rep.tables_ordered = false;
        }
      }
    }
  }
  rep.all_pass = all_rows && rep.monotone_upper && rep.tables_ordered;
  return rep;
}

ScaleFunction hausdorff_endpoint_family(const SetModel& model, double s,
                                        double box_upper, const DeltaGrid& grid,
                                        int members, double tol) {
  if (members < 1) throw InputError("need at least one member");
  if (!(box_upper > s)) {
    throw InputError("endpoint family needs s below the upper box dimension");
  }
  if (grid.size() < 2 * static_cast<std::size_t>(members)) {
    throw InputError("grid too short for the requested family");
  }
  const int n0 = static_cast<int>(std::ceil(1.0 / (box_upper - s)));
  std::vector<ScaleFunction> fs;
  std::vector<double> activation;
  const std::size_t seg = grid.size() / static_cast<std::size_t>(members);
  for (int i = 0; i < members; ++i) {
    const PhiSTable t =
        phi_s_function(model, s + 1.0 / (n0 + i), grid, tol, 1.0);
    fs.push_back(t.as_function());
    activation.push_back(grid[static_cast<std::size_t>(i) * seg]);
  }
  return ScaleFunction::min_family(std::move(fs), std::move(activation));
}

}  // namespace phidim
