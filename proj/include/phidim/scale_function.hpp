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

#ifndef PHIDIM_SCALE_FUNCTION_HPP_
#define PHIDIM_SCALE_FUNCTION_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "phidim/grid.hpp"

namespace phidim {

class ScaleFunction;

// Phi(delta) = delta^(1/theta).
struct PowerLaw {
  double theta = 1.0;
};

// Phi(delta) = delta / (-log delta).
struct LogCorrected {};

// Phi(delta) = exp(-delta^(-c)).
struct StretchedExp {
  double c = 1.0;
};

// Piecewise linear in (log delta, log Phi); log_delta ascending.
struct Tabulated {
  std::vector<double> log_delta;
  std::vector<double> log_phi;
};

// Pointwise minimum over the members active at delta. Member i is active
// once log delta <= log_activation[i].
struct MinFamily {
  std::vector<ScaleFunction> members;
  std::vector<double> log_activation;
};

// A tabulated interpolation function Phi_s built for one model.
struct PhiSFunction {
  double s = 0.0;
  Tabulated table;
  std::string model_id;
};

class ScaleFunction {
 public:
  using Variant = std::variant<PowerLaw, LogCorrected, StretchedExp, Tabulated,
                               MinFamily, PhiSFunction>;

  static ScaleFunction power_law(double theta);
  static ScaleFunction log_corrected();
  static ScaleFunction stretched_exp(double c);
  // Breakpoints as (log delta, log Phi) pairs, any order.
  static ScaleFunction tabulated(std::vector<std::pair<double, double>> pts);
  static ScaleFunction min_family(std::vector<ScaleFunction> members,
                                  std::vector<double> log_activation);
  static ScaleFunction phi_s(double s, Tabulated table, std::string model_id);

  // Restricts the validity threshold Y (never enlarges it).
  ScaleFunction with_domain_upper(double log_y) const;

  double eval(double delta) const;
  double eval_log(double log_delta) const;
  bool in_domain(double log_delta) const;

  double log_domain_upper() const { return log_domain_upper_; }
  // Smallest log delta the function accepts; -inf for symbolic variants.
  double log_domain_lower() const;

  std::string_view variant_name() const;
  std::string describe() const;
  const Variant& variant() const { return variant_; }

 private:
  ScaleFunction(Variant v, double log_domain_upper);

  Variant variant_;
  double log_domain_upper_;
};

double eval_phi(const ScaleFunction& phi, double delta);
double eval_phi_log(const ScaleFunction& phi, double log_delta);

struct ExponentPair {
  double theta1 = 0.0;
  double theta2 = 0.0;
  std::string grid_spec;
};

ExponentPair exponent_pair(const ScaleFunction& phi, const DeltaGrid& grid);

struct ComparisonWitness {
  double alpha = 0.0;
  double log_delta = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct ComparisonReport {
  bool satisfied = false;
  std::string label;
  std::optional<ComparisonWitness> witness;
  std::size_t points_checked = 0;
  std::string grid_spec;
};

inline constexpr double kDefaultAlphas[] = {1.01, 1.05, 1.1, 1.25, 1.5, 2.0};

// Sufficient condition for phi1 to precede phi on the finest half of grid:
// log phi1(alpha L) <= log phi(L) / alpha for each alpha.
ComparisonReport precedes(const ScaleFunction& phi1, const ScaleFunction& phi,
                          std::span<const double> alphas,
                          const DeltaGrid& grid);

// Two-sided chain alpha log phi(alpha L) <= log phi1(L) <= log phi(L/alpha)/alpha.
ComparisonReport equivalent(const ScaleFunction& phi, const ScaleFunction& phi1,
                            std::span<const double> alphas,
                            const DeltaGrid& grid);

}  // namespace phidim

#endif  // PHIDIM_SCALE_FUNCTION_HPP_
