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

#include "phidim/error.hpp"
#include "phidim/grid.hpp"
#include "phidim/log_math.hpp"

using namespace phidim;

TEST_CASE("log_add and log_sub match direct arithmetic") {
  CHECK(log_add(std::log(2.0), std::log(3.0)) == doctest::Approx(std::log(5.0)).epsilon(1e-15));
  CHECK(log_sub(std::log(5.0), std::log(3.0)) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(log_add(kNegInf, 1.5) == 1.5);
  CHECK(log_add(1.5, kNegInf) == 1.5);
  CHECK(log_sub(1.5, 1.5) == kNegInf);
  CHECK(log_add(1000.0, 1000.0) == doctest::Approx(1000.0 + std::log(2.0)));
  CHECK(log_add(-1e6, -1e6 - 800.0) == doctest::Approx(-1e6));
}

TEST_CASE("log_ceil rounds counts up") {
  CHECK(log_ceil(std::log(2.5)) == doctest::Approx(std::log(3.0)));
  CHECK(log_ceil(std::log(3.0)) == doctest::Approx(std::log(3.0)));
  CHECK(log_ceil(-4.0) == 0.0);
  CHECK(log_ceil(1e5) == 1e5);
}

TEST_CASE("format_double is shortest round-trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-400.0) == "-400");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(std::stod(format_double(1e-300)) == 1e-300);
}

TEST_CASE("linear grid runs coarse to fine in log2 steps") {
  const DeltaGrid g = DeltaGrid::linear_log2(-10, -1, 10);
  REQUIRE(g.size() == 10);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(g[i] / std::log(2.0) == doctest::Approx(-1.0 - static_cast<double>(i)));
  }
  CHECK(g.spec() == "-10:-1:10");
  const DeltaGrid p = DeltaGrid::parse("-1:-10:10");
  CHECK(p.size() == 10);
  CHECK(p[9] == doctest::Approx(g[9]));
}

TEST_CASE("iterated-log grid is geometric in |log2 delta|") {
  const DeltaGrid g = DeltaGrid::parse("-1000:-10:3:log");
  REQUIRE(g.size() == 3);
  CHECK(-g[0] / std::log(2.0) == doctest::Approx(10.0));
  CHECK(-g[1] / std::log(2.0) == doctest::Approx(100.0));
  CHECK(-g[2] / std::log(2.0) == doctest::Approx(1000.0));
  CHECK(g.spec() == "-1000:-10:3:log");
}

TEST_CASE("grid parsing rejects malformed specs") {
  CHECK_THROWS_AS(DeltaGrid::parse("-10:-1"), ConfigError);
  CHECK_THROWS_AS(DeltaGrid::parse("-10:-1:1"), ConfigError);
  CHECK_THROWS_AS(DeltaGrid::parse("-10:-1:2.5"), ConfigError);
  CHECK_THROWS_AS(DeltaGrid::parse("-10:x:5"), ConfigError);
  CHECK_THROWS_AS(DeltaGrid::parse("-10:-1:5:cubic"), ConfigError);
  CHECK_THROWS_AS(DeltaGrid::parse("-10:3:5"), ConfigError);
}

TEST_CASE("with_scales injects in-range scales once") {
  const DeltaGrid g = DeltaGrid::linear_log2(-10, -1, 10);
  const double extra[] = {-5.5 * std::log(2.0), -3.0 * std::log(2.0), -50.0};
  const DeltaGrid h = g.with_scales(extra);
  CHECK(h.size() == 11);
  CHECK(h.spec() == "-10:-1:10+scales");
  for (std::size_t i = 1; i < h.size(); ++i) CHECK(h[i] < h[i - 1]);
  const DeltaGrid f = g.finest(3);
  REQUIRE(f.size() == 3);
  CHECK(f[2] == g[9]);
}
