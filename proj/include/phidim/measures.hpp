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

#ifndef PHIDIM_MEASURES_HPP_
#define PHIDIM_MEASURES_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "phidim/covers.hpp"
#include "phidim/grid.hpp"
#include "phidim/scale_function.hpp"
#include "phidim/set_model.hpp"

namespace phidim {

struct Atom {
  double location = 0.0;
  double mass = 0.0;
  std::int64_t cube = 0;
};

// Finitely supported probability measure, sorted by location.
struct AtomicMeasure {
  std::vector<Atom> atoms;
  int base = 20;
  int m = 0;
  int l = 0;
  double s = 0.0;
  double log_prenormalization_total = 0.0;

  double total() const;
};

struct FrostmanOptions {
  int base = 20;
  std::size_t max_atoms = std::size_t{1} << 20;
};

// Cube-tree construction: mass b^{-ms} on each level-m cube meeting the set,
// then capped on the l coarser levels and normalised.
AtomicMeasure build_frostman_measure(const SetModel& model, double s,
                                     double log_delta, const ScaleFunction& phi,
                                     const FrostmanOptions& opt = {});

// Mass of every cube at `level` (coarser than or equal to m), by cube index.
std::vector<std::pair<std::int64_t, double>> cube_masses(
    const AtomicMeasure& mu, int level, bool normalized = true);

struct BallMassReport {
  double log_c_observed = 0.0;
  double center = 0.0;
  double radius = 0.0;
  double mass = 0.0;

  double c_observed() const;
};

// Geometric radii from lo to hi, at least `count` of them and spaced by a
// factor of at most 2.
std::vector<double> default_radii(ScaleWindow w, int count = 64);

// sup over atoms x and radii r of mu([x, x + 2r)) / r^s.
BallMassReport verify_ball_mass(const AtomicMeasure& mu, ScaleWindow w,
                                double s, std::span<const double> radii);
BallMassReport verify_ball_mass(const AtomicMeasure& mu, ScaleWindow w,
                                double s);

struct MassCertificate {
  bool certified = false;
  double a = 0.0;
  double c_ball = 0.0;
  double c_set = 0.0;
  double s = 0.0;
  // Lower bound on log of the restricted cover cost: log(a / c_set).
  double log_cost_bound = 0.0;
};

MassCertificate mass_lower_bound(const AtomicMeasure& mu, ScaleWindow w,
                                 double s, double a, double c_ball);

struct RoundtripRow {
  double s = 0.0;
  std::vector<double> log_c;
  double slope = 0.0;
};

struct RoundtripReport {
  std::vector<double> log_deltas;
  std::vector<RoundtripRow> rows;
  double measure_estimate = 0.0;
  double cover_lower = 0.0;
  double cover_upper = 0.0;
  double distance = 0.0;
  std::string grid_spec;
};

RoundtripReport massfrostman_roundtrip(const SetModel& model,
                                       const ScaleFunction& phi,
                                       std::span<const double> s_grid,
                                       const DeltaGrid& grid,
                                       const FrostmanOptions& opt = {},
                                       double tol = 1e-3);

}  // namespace phidim

#endif  // PHIDIM_MEASURES_HPP_
