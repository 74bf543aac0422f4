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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "phidim/covers.hpp"
#include "phidim/error.hpp"
#include "phidim/interpolation.hpp"

using namespace phidim;

namespace {

const double kLog2 = std::log(2.0);

double cap_of(double ld) { return ld - std::log(-ld); }

}  // namespace

TEST_CASE("a single point is feasible up to the cap") {
  const SetModel pt = make_single_point(0.0);
  for (double ld : {-5.0, -20.0, -200.0}) {
    const auto v = phi_s_at(pt, 0.5, ld);
    REQUIRE(v.has_value());
    CHECK(*v == doctest::Approx(cap_of(ld)));
  }
  CHECK_THROWS_AS(phi_s_at(pt, 0.5, -2.0), DomainError);
  CHECK_THROWS_AS(phi_s_at(pt, 0.5, -10.0, 1e-3, 0.0), InputError);
}

TEST_CASE("phi_s matches a brute-force scan of feasible scales") {
  const SetModel f1(SequenceSetModel{1.0, 10'000'000, 0.0});
  const double step = 0.05;
  for (double s : {0.25, 0.4}) {
    for (double l2 : {-20.0, -60.0}) {
      const double ld = l2 * kLog2;
      const auto v = phi_s_at(f1, s, ld, 1e-4);
      REQUIRE(v.has_value());
      double best = -INFINITY;
      for (double lx = cap_of(ld); lx > 4.0 * ld; lx -= step) {
        if (cover_cost(f1, ScaleWindow{lx, ld}, s).log_upper <= 0.0) {
          best = lx;
          break;
        }
      }
      CAPTURE(s);
      CAPTURE(l2);
      CHECK(*v >= best - 1e-9);
      CHECK(*v <= best + step + 1e-9);
    }
  }
}

TEST_CASE("feasibility grows with the budget and with s") {
  const SetModel f1(SequenceSetModel{1.0, 10'000'000, 0.0});
  const double ld = -40.0 * kLog2;
  const double a = *phi_s_at(f1, 0.3, ld, 1e-4, 1.0);
  const double b = *phi_s_at(f1, 0.3, ld, 1e-4, 4.0);
  CHECK(a <= b + 1e-4);
  const double c = *phi_s_at(f1, 0.35, ld, 1e-4, 1.0);
  CHECK(a <= c + 1e-4);
}

TEST_CASE("tables are monotone and ordered in s") {
  const SetModel f1(SequenceSetModel{1.0, 10'000'000, 0.0});
  const DeltaGrid g = DeltaGrid::linear_log2(-200.0, -10.0, 20);
  const PhiSTable lo = phi_s_function(f1, 0.2, g);
  const PhiSTable hi = phi_s_function(f1, 0.3, g);
  REQUIRE(lo.rows.size() == hi.rows.size());
  for (std::size_t i = 0; i < lo.rows.size(); ++i) {
    CHECK(lo.rows[i].log_phi <= hi.rows[i].log_phi + 1e-9);
    if (i > 0) {
      CHECK(lo.rows[i].log_delta < lo.rows[i - 1].log_delta);
      CHECK(lo.rows[i].log_phi <= lo.rows[i - 1].log_phi);
    }
  }
  const ScaleFunction fn = lo.as_function();
  CHECK(fn.eval_log(lo.rows[3].log_delta) == doctest::Approx(lo.rows[3].log_phi));
}

TEST_CASE("self-similar sets give the log-corrected function or nothing") {
  const SetModel c(CantorSchedule::uniform(1.0 / 3.0, 60));
  const DeltaGrid g = DeltaGrid::linear_log2(-40.0, -8.0, 5);
  const PhiSTable above = phi_s_function(c, 0.7, g);
  REQUIRE(above.rows.size() == 5);
  for (const PhiSRow& r : above.rows) CHECK(r.log_phi == doctest::Approx(cap_of(r.log_delta)));
  const PhiSTable below = phi_s_function(c, 0.5, g);
  CHECK(below.rows.empty());
  CHECK(below.dropped_log_deltas.size() == 5);
  CHECK_FALSE(below.diagnostics.empty());
}

TEST_CASE("interpolation recovers s on a sequence set") {
  const SetModel f1(SequenceSetModel{1.0, 10'000'000, 0.0});
  const std::vector<double> s_grid{0.2, 0.3, 0.4};
  const DeltaGrid g = DeltaGrid::linear_log2(-400.0, -20.0, 20);
  const InterpolationReport rep = verify_interpolation(f1, s_grid, g);
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.tables.size() == 3);
  CHECK(rep.monotone_upper);
  CHECK(rep.tables_ordered);
  for (const InterpolationRow& r : rep.rows) {
    CAPTURE(r.s);
    CHECK(std::fabs(r.estimate.upper_estimate() - r.s) < 0.05);
    CHECK(r.upper_pass);
  }
  CHECK(rep.box_upper == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("hausdorff endpoint family lies below its first member") {
  const SetModel f1(SequenceSetModel{1.0, 10'000'000, 0.0});
  const DeltaGrid g = DeltaGrid::linear_log2(-200.0, -10.0, 10);
  const ScaleFunction fam = hausdorff_endpoint_family(f1, 0.1, 0.5, g, 3);
  // n0 = ceil(1 / 0.4) = 3, so the first member is Phi_{0.1 + 1/3}.
  const PhiSTable first = phi_s_function(f1, 0.1 + 1.0 / 3.0, g);
  REQUIRE(first.rows.size() >= 5);
  for (const PhiSRow& r : first.rows) CHECK(fam.eval_log(r.log_delta) <= r.log_phi + 1e-9);
  CHECK_THROWS_AS(hausdorff_endpoint_family(f1, 0.6, 0.5, g, 3), InputError);
}
