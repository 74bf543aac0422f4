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

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "phidim/covers.hpp"
#include "phidim/error.hpp"
#include "phidim/log_math.hpp"

using namespace phidim;

namespace {

Skeleton as_points(const std::vector<double>& xs) {
  Skeleton s;
  for (double x : xs) s.push_back({x, x});
  return s;
}

// Minimum over all splits of the sorted points into consecutive runs.
double brute_force(const std::vector<double>& xs, double lo, double hi, double s) {
  const std::size_t n = xs.size();
  double best = INFINITY;
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    double total = 0.0;
    std::size_t start = 0;
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i) {
      const bool cut = i + 1 == n || (mask >> i & 1u);
      if (!cut) continue;
      const double span = xs[i] - xs[start];
      if (span > hi) {
        ok = false;
        break;
      }
      total += std::pow(std::max(span, lo), s);
      start = i + 1;
    }
    if (ok) best = std::min(best, total);
  }
  return best;
}

struct Instance {
  std::vector<double> points;
  ScaleWindow window;
  double s;
};

Instance random_instance(std::mt19937_64& rng, std::size_t max_points) {
  std::uniform_int_distribution<std::size_t> count(1, max_points);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Instance in;
  const std::size_t n = count(rng);
  for (std::size_t i = 0; i < n; ++i) in.points.push_back(u(rng));
  std::sort(in.points.begin(), in.points.end());
  in.points.erase(std::unique(in.points.begin(), in.points.end()), in.points.end());
  const double a = std::exp(-6.0 * u(rng));
  const double b = std::exp(-6.0 * u(rng));
  in.window = ScaleWindow::from_values(std::min(a, b), std::max(a, b));
  in.s = u(rng);
  return in;
}

std::vector<double> diameters_for(const Instance& in) {
  std::vector<double> d{in.window.lo()};
  for (std::size_t i = 0; i < in.points.size(); ++i) {
    for (std::size_t j = i + 1; j < in.points.size(); ++j) {
      const double span = in.points[j] - in.points[i];
      if (span > in.window.lo() && span <= in.window.hi()) d.push_back(span);
    }
  }
  return d;
}

}  // namespace

TEST_CASE("dp worked examples") {
  const Skeleton a = as_points({0.0, 0.5, 1.0});
  CHECK(std::exp(cover_cost_dp(a, ScaleWindow::from_values(0.1, 0.4), 1.0).log_upper) ==
        doctest::Approx(0.3).epsilon(1e-12));
  const Skeleton b = as_points({0.0, 0.05, 1.0});
  const CoverCost cb = cover_cost_dp(b, ScaleWindow::from_values(0.1, 0.5), 1.0, true);
  CHECK(std::exp(cb.log_upper) == doctest::Approx(0.2).epsilon(1e-12));
  REQUIRE(cb.pieces.has_value());
  CHECK(cb.pieces->size() == 2);
  CHECK(cb.exact());
  const Skeleton c = as_points({0.0, 0.1, 0.2, 0.7, 0.75, 0.9});
  CHECK(std::exp(cover_cost_dp(c, ScaleWindow::from_values(0.05, 0.25), 0.0).log_upper) ==
        doctest::Approx(2.0));
}

TEST_CASE("dp errors") {
  const Skeleton empty;
  CHECK_THROWS_AS(cover_cost_dp(empty, ScaleWindow::from_values(0.1, 0.5), 1.0), InputError);
  const Skeleton wide{{0.0, 0.9}};
  CHECK_THROWS_AS(cover_cost_dp(wide, ScaleWindow::from_values(0.1, 0.5), 1.0), InputError);
  const Skeleton unsorted{{0.5, 0.5}, {0.1, 0.1}};
  CHECK_THROWS_AS(cover_cost_dp(unsorted, ScaleWindow::from_values(0.1, 0.5), 1.0), InputError);
  CHECK_THROWS_AS(cover_cost_dp(as_points({0.0}), ScaleWindow::from_values(0.1, 0.5), -1.0),
                  InputError);
}

TEST_CASE("exhaustive oracle examples and caps") {
  const double one[] = {0.3};
  const ScaleWindow w = ScaleWindow::from_values(0.1, 0.3);
  const double p[] = {0.4};
  CHECK(cover_cost_exhaustive(p, w, 0.7, std::vector<double>{0.1}).log_upper ==
        doctest::Approx(0.7 * std::log(0.1)));
  const double two[] = {0.0, 0.9};
  CHECK(std::exp(cover_cost_exhaustive(two, w, 0.5, std::vector<double>{0.1, 0.3}).log_upper) ==
        doctest::Approx(2.0 * std::sqrt(0.1)));
  const std::vector<double> nine(9, 0.0);
  CHECK_THROWS_AS(cover_cost_exhaustive(nine, w, 1.0, one), InputError);
  CHECK_THROWS_AS(cover_cost_exhaustive(p, w, 1.0, std::vector<double>(33, 0.2)), InputError);
  CHECK_THROWS_AS(cover_cost_exhaustive(p, w, 1.0, std::vector<double>{0.5}), InputError);
}

TEST_CASE("dp agrees with exhaustive search and consecutive-run brute force") {
  std::mt19937_64 rng(20260101);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance in = random_instance(rng, 6);
    const Skeleton sk = as_points(in.points);
    const CoverCost dp = cover_cost_dp(sk, in.window, in.s);
    const CoverCost ex =
        cover_cost_exhaustive(in.points, in.window, in.s, diameters_for(in));
    CAPTURE(trial);
    CHECK(std::fabs(dp.log_upper - ex.log_upper) <= 1e-12);
    const double bf = brute_force(in.points, in.window.lo(), in.window.hi(), in.s);
    CHECK(std::exp(dp.log_upper) == doctest::Approx(bf).epsilon(1e-12));
  }
}

TEST_CASE("dp monotonicity properties on random point sets") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance in = random_instance(rng, 12);
    const Skeleton sk = as_points(in.points);
    const double base = cover_cost_dp(sk, in.window, in.s).log_upper;
    // Nonincreasing in s.
    CHECK(cover_cost_dp(sk, in.window, std::min(1.0, in.s + 0.1)).log_upper <= base + 1e-12);
    // Raising lo never lowers the cost.
    const ScaleWindow raised{std::min(in.window.log_hi, in.window.log_lo + 0.5), in.window.log_hi};
    CHECK(cover_cost_dp(sk, raised, in.s).log_upper >= base - 1e-12);
    // A nested window costs at least as much.
    const ScaleWindow inner{in.window.log_lo + 0.25 * (in.window.log_hi - in.window.log_lo),
                            in.window.log_hi - 0.25 * (in.window.log_hi - in.window.log_lo)};
    CHECK(cover_cost_dp(sk, inner, in.s).log_upper >= base - 1e-12);
  }
}

TEST_CASE("translation leaves dp costs unchanged") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance in = random_instance(rng, 10);
    std::vector<double> shifted = in.points;
    for (double& x : shifted) x += 10.0;
    CHECK(cover_cost_dp(as_points(shifted), in.window, in.s).log_upper ==
          doctest::Approx(cover_cost_dp(as_points(in.points), in.window, in.s).log_upper)
              .epsilon(1e-9));
  }
}

TEST_CASE("middle-thirds symbolic costs") {
  const CantorSchedule c = CantorSchedule::uniform(1.0 / 3.0, 40);
  const double d = std::log(2.0) / std::log(3.0);
  for (int j : {1, 5, 12, 30}) {
    const double lj = j * std::log(1.0 / 3.0);
    const CoverCost cc = cover_cost_cantor(c, ScaleWindow{lj, lj}, d);
    CHECK(cc.log_lower <= 1e-9);
    CHECK(cc.log_upper >= -1e-9);
    CHECK(std::fabs(cc.log_upper) <= 1e-9);
  }
  const ScaleWindow w{8 * std::log(1.0 / 3.0), 4 * std::log(1.0 / 3.0)};
  const CoverCost cc = cover_cost_cantor(c, w, 0.0);
  CHECK(std::exp(cc.log_upper) == doctest::Approx(16.0));
  const CantorSchedule shallow = CantorSchedule::uniform(1.0 / 3.0, 8);
  const Skeleton sk = shallow.materialize(8);
  CHECK(std::exp(cover_cost_dp(sk, w, 0.0).log_upper) == doctest::Approx(16.0));
}

TEST_CASE("cantor brackets contain the exact cost of a finite level") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<RatioRun> runs;
    for (int r = 0; r < 4; ++r) runs.push_back({2, u(rng) < 0.5 ? 0.2 : 1.0 / 3.0});
    const CantorSchedule c(runs);
    const double floor = c.log_length(c.depth());
    const double a = floor * u(rng);
    const double b = floor * u(rng);
    const ScaleWindow w{std::min(a, b), std::max(a, b)};
    const double s = u(rng);
    // The depth-8 set is its level-8 intervals.
    const Skeleton sk = subdivide(c.materialize(8), w.hi());
    const double exact = cover_cost_dp(sk, w, s).log_upper;
    const CoverCost cc = cover_cost_cantor(c, w, s);
    CAPTURE(trial);
    CHECK(cc.log_lower <= exact + 1e-9);
    CHECK(cc.log_upper >= exact - 1e-9);
  }
}

TEST_CASE("stability F is cheap at its sparse scale") {
  const ScaleFunction phi = ScaleFunction::power_law(0.5);
  const StabilityPair sp = build_stability_pair(phi, 3);
  const double s = 10.0 * std::log(2.0) / (9.0 * std::log(5.0));
  for (std::size_t n = 1; n < sp.state.log_r.size(); n += 2) {
    const double p0 = std::pow(10.0, sp.state.k[n]);
    const double p1 = std::pow(10.0, sp.state.k[n] + 1);
    // F's length after its sparse run, with 2^(p1 - 1) intervals.
    const double lf = sp.state.log_f_marks[n] + (p1 - p0) * std::log(0.2);
    const double level_cost = (p1 - 1.0) * std::log(2.0) + s * lf;
    const ScaleWindow w{phi.eval_log(lf), lf};
    const CoverCost cc = cover_cost_cantor(sp.f, w, s);
    CHECK(cc.log_upper <= level_cost + 1e-9 * std::fabs(lf));
    CHECK(level_cost <= 1e-9 * std::fabs(lf));
  }
}

TEST_CASE("sequence analytic cover") {
  const double p = 1.0;
  OracleOptions exact;
  exact.prefer_exact = true;
  for (double l2 : {-6.0, -10.0, -14.0}) {
    const double ld = l2 * std::log(2.0);
    const ScaleWindow w{2.0 * ld, ld};
    const SetModel m(SequenceSetModel{p, 10'000'000, 0.0});
    for (double s : {0.0, 0.2, 1.0 / 3.0, 0.6, 1.0}) {
      const CoverCost an = cover_cost_sequence_analytic(p, w, s);
      const CoverCost dp = cover_cost(m, w, s, exact);
      CAPTURE(l2);
      CAPTURE(s);
      CHECK(an.log_lower <= dp.log_upper + 1e-9);
      CHECK(an.log_upper >= an.log_lower);
      CHECK(an.log_upper - an.log_lower <= std::log(2.5));
      CHECK(an.log_upper >= dp.log_upper - std::log(1.1));
      if (s > 0.0) CHECK(an.log_upper <= dp.log_upper + s * std::log(4.0) + 1e-9);
    }
  }
  // At the critical exponent the cost neither vanishes nor explodes.
  for (double l2 = -50.0; l2 >= -400.0; l2 -= 50.0) {
    const double x = l2 * std::log(2.0);
    const CoverCost c = cover_cost_sequence_analytic(1.0, ScaleWindow{2.0 * x, x}, 1.0 / 3.0);
    CHECK(std::fabs(c.log_upper) < 3.0);
    CHECK(std::fabs(c.log_lower) < 3.0);
  }
  CHECK(cover_cost_sequence_analytic(1.0, ScaleWindow{-20.0, -10.0}, 1.0).log_upper < std::log(4.0));
}

TEST_CASE("product covers") {
  const SetModel c(CantorSchedule::uniform(1.0 / 3.0, 30));
  const SetModel prod = make_product(c, c);
  const double d = 2.0 * std::log(2.0) / std::log(3.0);
  for (int j : {3, 10}) {
    const double lj = j * std::log(1.0 / 3.0);
    const CoverCost cc = cover_cost(prod, ScaleWindow{lj, lj}, d);
    CHECK(std::fabs(cc.log_upper) <= 1e-9);
    CHECK(cc.log_lower <= 1e-9);
  }
  const ScaleWindow w{-12.0, -4.0};
  const CoverCost alone = cover_cost(c, w, 0.5);
  const CoverCost with_point = cover_cost(make_product(make_single_point(0.0), c), w, 0.5);
  CHECK(with_point.log_upper == doctest::Approx(alone.log_upper));
  CHECK(with_point.log_lower <= alone.log_lower + 1e-9);

  const SetModel f1(SequenceSetModel{1.0, 10'000'000, 0.0});
  const SetModel mixed = make_product(f1, c);
  double prev = -INFINITY;
  for (double l2 = -8.0; l2 >= -20.0; l2 -= 4.0) {
    const double x = l2 * std::log(2.0);
    const CoverCost cc = cover_cost(mixed, ScaleWindow{2.0 * x, x}, 0.5);
    CHECK(cc.log_lower > prev);
    prev = cc.log_lower;
  }
}

TEST_CASE("union costs add across wide gaps") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance a = random_instance(rng, 8);
    Instance b = random_instance(rng, 8);
    for (double& x : b.points) x += 2.0;
    const SetModel ma(PointSetModel{a.points});
    const SetModel mb(PointSetModel{b.points});
    const SetModel u = make_union({ma, mb}, 1.0);
    const CoverCost ca = cover_cost(ma, a.window, a.s);
    const CoverCost cb = cover_cost(mb, a.window, a.s);
    const CoverCost cu = cover_cost(u, a.window, a.s);
    CHECK(cu.log_upper == doctest::Approx(log_add(ca.log_upper, cb.log_upper)).epsilon(1e-12));
    CHECK(std::min(ca.log_upper, cb.log_upper) <= cu.log_upper);
  }
}

TEST_CASE("dispatcher guards") {
  const SetModel c(CantorSchedule::uniform(1.0 / 3.0, 10));
  CHECK_THROWS_AS(cover_cost(c, ScaleWindow{-2.0, 0.5}, 0.5), InputError);
  const SetModel carpet(CarpetParams{2, 100, {1, 100}});
  CHECK_THROWS_AS(cover_cost(carpet, ScaleWindow{-4.0, -2.0}, 0.5), UnsupportedError);
  CHECK(to_string(CoverMethod::kTwoScaleAnalytic) == "two-scale-analytic");
}

TEST_CASE("dense grid costs match the dp on the listed grid") {
  const SetModel dense(DenseGridModel{0.0});
  const ScaleWindow w = ScaleWindow::from_values(1.0 / 256.0, 1.0 / 16.0);
  const CoverCost an = cover_cost(dense, w, 0.7);
  Skeleton grid;
  for (int i = 0; i <= 256; ++i) grid.push_back({i / 256.0, i / 256.0});
  const CoverCost dp = cover_cost_dp(grid, w, 0.7);
  CHECK(an.log_lower <= dp.log_upper + 1e-9);
  CHECK(an.log_upper >= dp.log_upper - 1e-9);
}
