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

#ifndef PHIDIM_BOUNDS_HPP_
#define PHIDIM_BOUNDS_HPP_

#include <optional>
#include <string>

#include "phidim/estimator.hpp"

namespace phidim {

struct DimInputs {
  std::optional<double> hausdorff;
  double box_lower = 0.0;
  double box_upper = 0.0;
  double assouad = 1.0;
  double theta = 1.0;

  // Throws InputError unless hausdorff <= box_lower <= box_upper <= assouad.
  void validate() const;
};

// theta A B / (A - (1 - theta) B).
double general_lower_bound(const DimInputs& d, bool use_upper_box = true);

struct Derivatives {
  double first = 0.0;
  double second = 0.0;
};

Derivatives general_lower_bound_derivatives(const DimInputs& d,
                                            bool use_upper_box = true);

// Slope of the general lower bound at theta = 1: B - B^2 / A.
double bound_gradient(double box, double assouad);

double continuity_upper_bound(double dim_theta, const DimInputs& d,
                              double phi_target);
double continuity_lower_bound(double dim_theta, const DimInputs& d,
                              double phi_target);

struct MainCtyBound {
  double alpha = 1.0;
  double exponent_ratio = 1.0;
};

MainCtyBound maincty_bound(double dim_phi, double assouad, double eta);

struct HolderInputs {
  double alpha = 1.0;
  double gamma = 1.0;
  double dim_phi_F = 0.0;
  double assouad_image = 1.0;
};

double holder_bound(const HolderInputs& h);

struct DimTriple {
  double lower = 0.0;
  double upper = 0.0;
  double box_upper = 0.0;
};

struct ProductBounds {
  double lower_for_upper = 0.0;
  double upper_for_upper = 0.0;
  double lower_for_lower = 0.0;
  double upper_for_lower = 0.0;
};

ProductBounds product_bounds(const DimTriple& e, const DimTriple& f,
                             bool self_product);

struct MutualReport {
  bool violation = false;
  double box_estimate = 0.0;
  double theta_estimate = 0.0;
  double bound = 0.0;
  std::string reason;
};

// Flags a theta profile that falls below the general lower bound implied by
// a positive box profile.
MutualReport check_mutual_dependency(const DimensionProfile& theta_profile,
                                     double theta,
                                     const DimensionProfile& box_profile,
                                     double assouad, double eps0 = 1e-3,
                                     double slack = 0.02);
MutualReport check_mutual_dependency(double theta_estimate, double theta,
                                     double box_estimate, double assouad,
                                     double eps0 = 1e-3, double slack = 0.02);

}  // namespace phidim

#endif  // PHIDIM_BOUNDS_HPP_
