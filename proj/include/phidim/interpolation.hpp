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

#ifndef PHIDIM_INTERPOLATION_HPP_
#define PHIDIM_INTERPOLATION_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phidim/covers.hpp"
#include "phidim/estimator.hpp"
#include "phidim/grid.hpp"
#include "phidim/scale_function.hpp"
#include "phidim/set_model.hpp"

namespace phidim {

// log of sup{x : cover cost over [x, delta] at exponent s is <= budget},
// searched on log x in [floor, log delta - log(-log delta)]. Returns nullopt
// when even the finest admissible x exceeds the budget.
std::optional<double> phi_s_at(const SetModel& model, double s,
                               double log_delta, double tol = kDefaultTol,
                               double budget = 1.0,
                               const OracleOptions& opt = {});

struct PhiSRow {
  double log_delta = 0.0;
  double log_phi = 0.0;
};

struct PhiSTable {
  double s = 0.0;
  double budget = 1.0;
  std::string model_id;
  std::string grid_spec;
  std::vector<PhiSRow> rows;  // coarse to fine
  std::vector<double> dropped_log_deltas;
  std::vector<std::string> diagnostics;

  ScaleFunction as_function() const;
};

PhiSTable phi_s_function(const SetModel& model, double s, const DeltaGrid& grid,
                         double tol = kDefaultTol, double budget = 1.0,
                         const OracleOptions& opt = {});

struct InterpolationRow {
  double s = 0.0;
  std::size_t rows_used = 0;
  Extrapolation estimate;
  bool upper_pass = false;
  bool lower_pass = false;
};

struct InterpolationReport {
  std::vector<InterpolationRow> rows;
  std::vector<PhiSTable> tables;
  double box_lower = 0.0;
  double box_upper = 0.0;
  double slack = 0.05;
  bool monotone_upper = false;
  bool tables_ordered = false;
  bool all_pass = false;
  std::string grid_spec;
};

InterpolationReport verify_interpolation(const SetModel& model,
                                         std::span<const double> s_grid,
                                         const DeltaGrid& grid,
                                         double tol = kDefaultTol,
                                         double slack = 0.05,
                                         const OracleOptions& opt = {});

// Pointwise minimum of Phi_{s + 1/n} for n = n0, n0 + 1, ..., with member n
// switched on below the given activation scale.
ScaleFunction hausdorff_endpoint_family(const SetModel& model, double s,
                                        double box_upper, const DeltaGrid& grid,
                                        int members, double tol = kDefaultTol);

}  // namespace phidim

#endif  // PHIDIM_INTERPOLATION_HPP_
