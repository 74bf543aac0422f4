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

#include "phidim/error.hpp"
#include "phidim/scale_function.hpp"

using namespace phidim;

namespace {

const DeltaGrid kGrid = DeltaGrid::iterated_log(-2000, -4, 64);

std::vector<ScaleFunction> samples() {
  return {ScaleFunction::power_law(0.3), ScaleFunction::power_law(1.0),
          ScaleFunction::log_corrected(), ScaleFunction::stretched_exp(0.5),
          ScaleFunction::stretched_exp(0.1),
          ScaleFunction::tabulated({{-4000.0, -9000.0}, {-2.0, -5.0}})};
}

}  // namespace

TEST_CASE("closed-form evaluations") {
  CHECK(eval_phi(ScaleFunction::power_law(0.5), 0.01) == doctest::Approx(1e-4).epsilon(1e-14));
  CHECK(eval_phi(ScaleFunction::log_corrected(), std::exp(-10.0)) ==
        doctest::Approx(std::exp(-10.0) / 10.0).epsilon(1e-14));
  CHECK(eval_phi(ScaleFunction::stretched_exp(0.5), 0.01) ==
        doctest::Approx(std::exp(-10.0)).epsilon(1e-12));
  CHECK(eval_phi_log(ScaleFunction::power_law(0.5), -277.0) == doctest::Approx(-554.0));
  CHECK(eval_phi_log(ScaleFunction::log_corrected(), -277.0) ==
        doctest::Approx(-277.0 - std::log(277.0)));
}

TEST_CASE("tabulated functions interpolate in log-log space") {
  const ScaleFunction t = ScaleFunction::tabulated({{-10.0, -30.0}, {-2.0, -6.0}});
  CHECK(t.eval_log(-10.0) == -30.0);
  CHECK(t.eval_log(-2.0) == -6.0);
  CHECK(t.eval_log(-6.0) == doctest::Approx(-18.0));
  CHECK_THROWS_AS(t.eval_log(-11.0), DomainError);
  CHECK_THROWS_AS(ScaleFunction::tabulated({{-10.0, -5.0}, {-2.0, -6.0}}),
                  InvalidFunctionError);
  CHECK_THROWS_AS(ScaleFunction::tabulated({{-10.0, -3.0}, {-2.0, -6.0}}),
                  InvalidFunctionError);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(ScaleFunction::power_law(0.0), InvalidFunctionError);
  CHECK_THROWS_AS(ScaleFunction::power_law(1.5), InvalidFunctionError);
  CHECK_THROWS_AS(ScaleFunction::stretched_exp(-1.0), InvalidFunctionError);
  CHECK_THROWS_AS(ScaleFunction::power_law(0.5).eval_log(0.5), DomainError);
}

TEST_CASE("admissibility holds on sampled grids") {
  for (const ScaleFunction& f : samples()) {
    CAPTURE(f.describe());
    double prev = -INFINITY;
    for (auto it = kGrid.log_deltas().rbegin(); it != kGrid.log_deltas().rend(); ++it) {
      if (!f.in_domain(*it)) continue;
      const double v = f.eval_log(*it);
      CHECK(v <= *it);
      CHECK(v >= prev);
      prev = v;
      const double direct = std::exp(*it);
      if (direct > 1e-300 && v > -700.0) {
        CHECK(std::log(f.eval(direct)) == doctest::Approx(v).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("phi(delta)/delta vanishes along the grid") {
  for (const ScaleFunction& f : samples()) {
    if (f.variant_name() == "power_law" &&
        std::get<PowerLaw>(f.variant()).theta == 1.0) {
      continue;
    }
    CAPTURE(f.describe());
    const double finest = kGrid.log_deltas().back();
    if (!f.in_domain(finest)) continue;
    CHECK(f.eval_log(finest) - finest < std::log(1e-3));
  }
}

TEST_CASE("exponent pairs") {
  const ExponentPair p = exponent_pair(ScaleFunction::power_law(0.3), kGrid);
  CHECK(p.theta1 == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(p.theta2 == doctest::Approx(0.3).epsilon(1e-14));
  const DeltaGrid deep = DeltaGrid::iterated_log(-1e6, -10, 64);
  const ExponentPair l = exponent_pair(ScaleFunction::log_corrected(), deep);
  CHECK(l.theta1 >= 0.99);
  CHECK(l.theta2 <= 1.0);
  const ExponentPair s = exponent_pair(ScaleFunction::stretched_exp(0.5), kGrid);
  CHECK(s.theta1 >= 0.0);
  CHECK(s.theta2 <= 1e-2);
  CHECK_THROWS_AS(exponent_pair(ScaleFunction::power_law(0.3),
                                DeltaGrid::linear_log2(-10, -3, 6)),
                  ConfigError);
}

TEST_CASE("precedes examples") {
  const auto r = precedes(ScaleFunction::power_law(0.3), ScaleFunction::power_law(0.5),
                          kDefaultAlphas, kGrid);
  CHECK(r.satisfied);
  CHECK(r.label == "sufficient-condition satisfied");
  const double one[] = {1.01};
  for (const ScaleFunction& f : samples()) {
    CHECK(precedes(f, f, one, kGrid).satisfied);
  }
  const auto bad = precedes(ScaleFunction::power_law(0.8), ScaleFunction::power_law(0.2),
                            kDefaultAlphas, kGrid);
  CHECK_FALSE(bad.satisfied);
  CHECK(bad.label == "sufficient-condition violated");
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->lhs > bad.witness->rhs);
}

TEST_CASE("precedes is transitive on power-law triples") {
  std::vector<ScaleFunction> fs;
  for (int i = 1; i <= 10; ++i) fs.push_back(ScaleFunction::power_law(0.1 * i));
  for (const auto& a : fs) {
    for (const auto& b : fs) {
      for (const auto& c : fs) {
        if (precedes(a, b, kDefaultAlphas, kGrid).satisfied &&
            precedes(b, c, kDefaultAlphas, kGrid).satisfied) {
          CHECK(precedes(a, c, kDefaultAlphas, kGrid).satisfied);
        }
      }
    }
  }
}

TEST_CASE("equivalence examples") {
  const ScaleFunction half = ScaleFunction::power_law(0.5);
  CHECK(equivalent(half, half, kDefaultAlphas, kGrid).satisfied);
  std::vector<std::pair<double, double>> doubled;
  for (double ld : kGrid.log_deltas()) {
    doubled.emplace_back(ld, std::min(ld, std::log(2.0) + 2.0 * ld));
  }
  const ScaleFunction twice = ScaleFunction::tabulated(doubled);
  CHECK(equivalent(half, twice, kDefaultAlphas, kGrid).satisfied);
  const auto r = equivalent(ScaleFunction::power_law(0.4), ScaleFunction::power_law(0.6),
                            kDefaultAlphas, kGrid);
  CHECK_FALSE(r.satisfied);
  CHECK(r.witness.has_value());
}

TEST_CASE("min family takes the pointwise minimum of active members") {
  const ScaleFunction a = ScaleFunction::power_law(0.5);
  const ScaleFunction b = ScaleFunction::power_law(0.25);
  const ScaleFunction m = ScaleFunction::min_family({a, b}, {0.0, -100.0});
  CHECK(m.eval_log(-50.0) == doctest::Approx(-100.0));
  CHECK(m.eval_log(-200.0) == doctest::Approx(-800.0));
}

TEST_CASE("domain restriction never enlarges") {
  const ScaleFunction f = ScaleFunction::power_law(0.5).with_domain_upper(-3.0);
  CHECK(f.log_domain_upper() == -3.0);
  CHECK_FALSE(f.in_domain(-2.0));
  CHECK(f.with_domain_upper(-1.0).log_domain_upper() == -3.0);
}
