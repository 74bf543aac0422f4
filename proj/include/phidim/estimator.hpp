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

#ifndef PHIDIM_ESTIMATOR_HPP_
#define PHIDIM_ESTIMATOR_HPP_

#include <span>
#include <string>
#include <vector>

#include "phidim/covers.hpp"
#include "phidim/grid.hpp"
#include "phidim/scale_function.hpp"
#include "phidim/set_model.hpp"

namespace phidim {

inline constexpr double kDefaultTol = 1e-3;

struct ExponentBracket {
  double s_lower = 0.0;
  double s_upper = 0.0;

  double mid() const { return 0.5 * (s_lower + s_upper); }
};

// Where the window cover cost crosses 1. s_lower comes from the lower cost
// bound and s_upper from the upper one, each to within tol.
ExponentBracket critical_exponent(const SetModel& model,
                                  const ScaleFunction& phi, double log_delta,
                                  double tol = kDefaultTol,
                                  const OracleOptions& opt = {});

// Same, on an explicit window.
ExponentBracket critical_exponent_window(const SetModel& model, ScaleWindow w,
                                         double tol = kDefaultTol,
                                         const OracleOptions& opt = {});

struct ProfileRow {
  double log_delta = 0.0;
  double s_lower = 0.0;
  double s_upper = 0.0;
};

struct Extrapolation {
  // Largest row over the finest third, as a bracket.
  double upper_lower = 0.0;
  double upper_upper = 0.0;
  // Smallest row over the finest third, as a bracket.
  double lower_lower = 0.0;
  double lower_upper = 0.0;
  std::string method = "finest-third max/min";

  double upper_estimate() const { return 0.5 * (upper_lower + upper_upper); }
  double lower_estimate() const { return 0.5 * (lower_lower + lower_upper); }
};

struct DimensionProfile {
  std::vector<ProfileRow> rows;
  std::string phi;
  std::string model_id;
  std::string grid_spec;
  double tol = kDefaultTol;
  Extrapolation extrapolation;
};

DimensionProfile dimension_profile(const SetModel& model,
                                   const ScaleFunction& phi,
                                   const DeltaGrid& grid,
                                   double tol = kDefaultTol,
                                   const OracleOptions& opt = {});

// theta = 1 uses the log-corrected function.
std::vector<DimensionProfile> theta_profile(const SetModel& model,
                                            std::span<const double> thetas,
                                            const DeltaGrid& grid,
                                            double tol = kDefaultTol,
                                            const OracleOptions& opt = {});

Extrapolation extrapolate(std::span<const ProfileRow> rows);

}  // namespace phidim

#endif  // PHIDIM_ESTIMATOR_HPP_
