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

#include "phidim/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "phidim/error.hpp"
#include "phidim/log_math.hpp"

namespace phidim {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InputError(what);
}

bool finite_all(std::initializer_list<double> xs) {
  return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

void DimInputs::validate() const {
  require(finite_all({box_lower, box_upper, assouad, theta}),
          "dimension inputs must be finite");
  require(assouad > 0.0, "assouad dimension must be positive");
  require(theta > 0.0 && theta <= 1.0, "theta must lie in (0, 1]");
  require(box_lower >= 0.0 && box_lower <= box_upper,
          "need 0 <= lower box <= upper box");
  require(box_upper <= assouad, "need upper box <= assouad");
  if (hausdorff) {
    require(*hausdorff >= 0.0 && *hausdorff <= box_lower,
            "need 0 <= hausdorff <= lower box");
  }
}

double general_lower_bound(const DimInputs& d, bool use_upper_box) {
  d.validate();
  const double a = d.assouad;
  const double b = use_upper_box ? d.box_upper : d.box_lower;
  const double denom = a - (1.0 - d.theta) * b;
  require(denom > 0.0, "general lower bound: denominator must be positive");
  return d.theta * a * b / denom;
}

Derivatives general_lower_bound_derivatives(const DimInputs& d,
                                            bool use_upper_box) {
  d.validate();
  const double a = d.assouad;
  const double b = use_upper_box ? d.box_upper : d.box_lower;
  const double denom = a - (1.0 - d.theta) * b;
  require(denom > 0.0, "general lower bound: denominator must be positive");
  return {a * b * (a - b) / (denom * denom),
          -2.0 * a * b * b * (a - b) / (denom * denom * denom)};
}

double bound_gradient(double box, double assouad) {
  require(assouad > 0.0 && box >= 0.0 && box <= assouad,
          "bound gradient: need 0 <= box <= assouad");
  return box - box * box / assouad;
}

double continuity_upper_bound(double dim_theta, const DimInputs& d,
                              double phi_target) {
  require(finite_all({dim_theta, phi_target, d.theta, d.assouad}),
          "continuity bound: inputs must be finite");
  const double theta = d.theta;
  const double a = d.assouad;
  require(theta > 0.0, "continuity bound: theta must be positive");
  require(theta <= phi_target && phi_target <= 1.0,
          "continuity upper bound: need theta <= phi <= 1");
  require(dim_theta >= 0.0 && dim_theta <= a,
          "continuity bound: need 0 <= dim <= assouad");
  const double gap = phi_target - theta;
  const double denom = gap * dim_theta + theta * a;
  require(denom > 0.0, "continuity upper bound: zero denominator");
  return dim_theta + gap * dim_theta * (a - dim_theta) / denom;
}

double continuity_lower_bound(double dim_theta, const DimInputs& d,
                              double phi_target) {
  require(finite_all({dim_theta, phi_target, d.theta, d.assouad}),
          "continuity bound: inputs must be finite");
  const double theta = d.theta;
  const double a = d.assouad;
  require(phi_target > 0.0 && phi_target <= theta && theta <= 1.0,
          "continuity lower bound: need 0 < phi <= theta <= 1");
  require(dim_theta >= 0.0 && dim_theta <= a,
          "continuity bound: need 0 <= dim <= assouad");
  const double denom = theta * a - (theta - phi_target) * dim_theta;
  require(denom > 0.0, "continuity lower bound: denominator must be positive");
  return phi_target * a * dim_theta / denom;
}

MainCtyBound maincty_bound(double dim_phi, double assouad, double eta) {
  require(finite_all({dim_phi, assouad, eta}), "inputs must be finite");
  require(dim_phi > 0.0 && dim_phi < assouad,
          "need 0 < dimension < assouad dimension");
  require(eta >= 0.0 && eta < assouad - dim_phi,
          "eta must lie in [0, assouad - dimension)");
  return {(assouad - dim_phi) / (assouad - dim_phi - eta),
          dim_phi / (dim_phi + eta)};
}

double holder_bound(const HolderInputs& h) {
  require(finite_all({h.alpha, h.gamma, h.dim_phi_F, h.assouad_image}),
          "inputs must be finite");
  require(h.alpha > 0.0 && h.alpha <= 1.0, "alpha must lie in (0, 1]");
  require(h.gamma >= 1.0 && h.gamma * h.alpha <= 1.0 + 1e-15,
          "gamma must lie in [1, 1/alpha]");
  require(h.dim_phi_F >= 0.0 && h.assouad_image >= 0.0,
          "dimensions must be nonnegative");
  if (h.dim_phi_F >= h.alpha * h.assouad_image) {
    return std::min(h.assouad_image, h.dim_phi_F / h.alpha);
  }
  return (h.dim_phi_F + h.alpha * (h.gamma - 1.0) * h.assouad_image) /
         (h.alpha * h.gamma);
}

ProductBounds product_bounds(const DimTriple& e, const DimTriple& f,
                             bool self_product) {
  for (const DimTriple* t : {&e, &f}) {
    require(finite_all({t->lower, t->upper, t->box_upper}),
            "product bounds: inputs must be finite");
    require(t->lower >= 0.0 && t->lower <= t->upper && t->upper <= t->box_upper,
            "product bounds: need 0 <= lower <= upper <= upper box");
  }
  ProductBounds b;
  b.lower_for_upper = std::max(e.upper + f.lower, e.lower + f.upper);
  if (self_product) b.lower_for_upper = 2.0 * f.upper;
  b.upper_for_upper = std::min(e.upper + f.box_upper, e.box_upper + f.upper);
  b.lower_for_lower = e.lower + f.lower;
  b.upper_for_lower = std::min(e.lower + f.box_upper, e.box_upper + f.lower);
  return b;
}

MutualReport check_mutual_dependency(double theta_estimate, double theta,
                                     double box_estimate, double assouad,
                                     double eps0, double slack) {
  MutualReport r;
  r.box_estimate = box_estimate;
  r.theta_estimate = theta_estimate;
  if (box_estimate <= eps0) {
    r.reason = "box estimate is zero; nothing to check";
    return r;
  }
  DimInputs d;
  d.box_lower = std::min(box_estimate, assouad);
  d.box_upper = d.box_lower;
  d.assouad = assouad;
  d.theta = theta;
  r.bound = general_lower_bound(d);
  r.violation = theta_estimate < r.bound - slack;
  r.reason = r.violation ? "theta estimate below the general lower bound"
                         : "consistent with the general lower bound";
  return r;
}

MutualReport check_mutual_dependency(const DimensionProfile& theta_profile,
                                     double theta,
                                     const DimensionProfile& box_profile,
                                     double assouad, double eps0,
                                     double slack) {
  return check_mutual_dependency(
      theta_profile.extrapolation.upper_upper, theta,
      box_profile.extrapolation.upper_upper, assouad, eps0, slack);
}

}  // namespace phidim
