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
#include <random>
#include <vector>

#include "phidim/error.hpp"
#include "phidim/log_math.hpp"
#include "phidim/set_model.hpp"

using namespace phidim;

namespace {

// Direct scan for the smallest N whose gaps are all below the resolution.
std::int64_t scan_truncation(double p, double res) {
  std::int64_t n = 1;
  std::int64_t last_big = 0;
  for (; n < 5'000'000; ++n) {
    const double gap = std::pow(n, -p) - std::pow(n + 1, -p);
    if (gap >= res) last_big = n;
    if (gap < res * 1e-3) break;
  }
  return last_big + 1;
}

double log_phi_sqrt(double x) { return 2.0 * x; }

}  // namespace

TEST_CASE("sequence truncation") {
  CHECK(build_sequence_set(1.0, std::ldexp(1.0, -20)).n_trunc == scan_truncation(1.0, std::ldexp(1.0, -20)));
  CHECK(build_sequence_set(1.0, std::ldexp(1.0, -20)).n_trunc == 1024);
  CHECK(build_sequence_set(1.0, 0.3).n_trunc == 2);
  CHECK(build_sequence_set(2.0, 1.0).n_trunc == 1);
  CHECK(build_sequence_set(0.5, 1e-3).n_trunc == scan_truncation(0.5, 1e-3));
  CHECK_THROWS_AS(build_sequence_set(1.0, 1e-20), ResolutionError);
  CHECK_THROWS_AS(build_sequence_set(-1.0, 0.1), InputError);
}

TEST_CASE("sequence skeleton keeps isolated points and one cluster") {
  const SetModel m(SequenceSetModel{1.0, 2, 0.0});
  const Skeleton s = skeleton(m, std::log(0.1));
  REQUIRE(s.size() == 2);
  CHECK(s[0].lo == 0.0);
  CHECK(s[0].hi == doctest::Approx(0.5));
  CHECK(s[1].lo == 1.0);
  CHECK(s[1].hi == 1.0);
}

TEST_CASE("middle-thirds skeleton") {
  const SetModel m(CantorSchedule::uniform(1.0 / 3.0, 2));
  const Skeleton s = skeleton(m, std::log(1.0 / 9.0));
  REQUIRE(s.size() == 4);
  const double starts[] = {0.0, 2.0 / 9.0, 2.0 / 3.0, 8.0 / 9.0};
  for (int i = 0; i < 4; ++i) {
    CHECK(s[i].lo == doctest::Approx(starts[i]));
    CHECK(s[i].hi - s[i].lo == doctest::Approx(1.0 / 9.0));
  }
}

TEST_CASE("cantor level counts and lengths are exact products") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> count(0, 6);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<RatioRun> runs;
    std::vector<double> ratios;
    for (int r = 0; r < 5; ++r) {
      const int c = count(rng);
      const double ratio = (trial + r) % 2 ? 0.2 : 1.0 / 3.0;
      runs.push_back({c, ratio});
      for (int i = 0; i < c; ++i) ratios.push_back(ratio);
    }
    if (ratios.empty()) continue;
    const CantorSchedule c(runs);
    REQUIRE(c.depth() == static_cast<std::int64_t>(ratios.size()));
    double log_len = 0.0;
    for (std::size_t j = 1; j <= ratios.size(); ++j) {
      log_len += std::log(ratios[j - 1]);
      CHECK(c.log_length(static_cast<std::int64_t>(j)) ==
            doctest::Approx(log_len).epsilon(1e-12));
      CHECK(c.log_count(static_cast<std::int64_t>(j)) ==
            doctest::Approx(static_cast<double>(j) * std::log(2.0)).epsilon(1e-12));
      CHECK(c.ratio_at(static_cast<std::int64_t>(j)) == ratios[j - 1]);
    }
    const auto level = std::min<std::int64_t>(c.depth(), 10);
    const auto ivs = c.materialize(level);
    CHECK(ivs.size() == (std::size_t{1} << level));
    for (std::size_t i = 1; i < ivs.size(); ++i) CHECK(ivs[i].lo > ivs[i - 1].hi);
  }
}

TEST_CASE("cantor schedule validation and caps") {
  CHECK_THROWS_AS(CantorSchedule({{3, 0.5}}), InputError);
  CHECK_THROWS_AS(CantorSchedule({{3, 0.0}}), InputError);
  const CantorSchedule deep = CantorSchedule::uniform(1.0 / 3.0, 1'000'000'000'000);
  CHECK(deep.log_length(1'000'000'000'000) ==
        doctest::Approx(1e12 * std::log(1.0 / 3.0)).epsilon(1e-12));
  CHECK_THROWS_AS(deep.materialize(21), ResolutionError);
}

TEST_CASE("cantor skeleton total length shrinks with resolution") {
  const SetModel m(CantorSchedule({{3, 1.0 / 3.0}, {4, 0.2}, {5, 1.0 / 3.0}}));
  double prev = INFINITY;
  for (double lr = -0.5; lr > -14.0; lr -= 0.7) {
    const Skeleton s = skeleton(m, lr);
    double total = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      total += s[i].hi - s[i].lo;
      if (i > 0) CHECK(s[i].lo > s[i - 1].hi);
    }
    CHECK(total <= prev * (1.0 + 1e-12));
    prev = total;
  }
}

TEST_CASE("unions concatenate well-separated skeletons") {
  const SetModel a(CantorSchedule::uniform(1.0 / 3.0, 4));
  const SetModel b = translate(SetModel(CantorSchedule::uniform(0.2, 4)), 2.0);
  const SetModel u = make_union({b, a}, 1.0);
  const double lr = std::log(0.01);
  const Skeleton sa = skeleton(a, lr);
  const Skeleton sb = skeleton(b, lr);
  const Skeleton su = skeleton(u, lr);
  REQUIRE(su.size() == sa.size() + sb.size());
  for (std::size_t i = 0; i < sa.size(); ++i) CHECK(su[i].lo == sa[i].lo);
  for (std::size_t i = 0; i < sb.size(); ++i) CHECK(su[sa.size() + i].lo == sb[i].lo);
  CHECK_THROWS_AS(make_union({a, translate(a, 1.5)}, 1.0), InputError);
}

TEST_CASE("holder image skeleton maps endpoints by x^alpha") {
  const SetModel base(CantorSchedule::uniform(1.0 / 3.0, 8));
  const double alpha = 0.5;
  const SetModel img = make_holder_image(base, alpha);
  const double lr = std::log(0.05);
  const Skeleton sb = skeleton(base, lr / alpha);
  const Skeleton si = skeleton(img, lr);
  REQUIRE(si.size() == sb.size());
  for (std::size_t i = 0; i < sb.size(); ++i) {
    CHECK(si[i].lo == doctest::Approx(std::pow(sb[i].lo, alpha)));
    CHECK(si[i].hi == doctest::Approx(std::pow(sb[i].hi, alpha)));
    if (i > 0) CHECK(si[i].lo > si[i - 1].hi);
  }
  CHECK_THROWS_AS(make_holder_image(translate(base, 2.0), alpha), InputError);
  CHECK_THROWS_AS(make_holder_image(base, 1.5), InputError);
}

TEST_CASE("stability schedule follows the defining inequalities") {
  const ScaleFunction phi = ScaleFunction::power_law(0.5);
  const StabilityPair sp = build_stability_pair(phi, 3);
  const auto& st = sp.state;
  REQUIRE(st.k.size() == 4);
  CHECK(st.k[0] == 0);
  CHECK(st.log_e_marks[0] == 0.0);
  CHECK(st.log_f_marks[0] == 0.0);

  // Independent replay of the construction for Phi(x) = x^2.
  const double l3 = std::log(1.0 / 3.0);
  const double l5 = std::log(0.2);
  double le = 0.0;
  double lf = 0.0;
  std::vector<int> ks{0};
  for (int n = 0; n < 3; ++n) {
    const int kn = ks.back();
    const double p0 = std::pow(10.0, kn);
    const double p1 = std::pow(10.0, kn + 1);
    const double p2 = std::pow(10.0, kn + 2);
    const double own = n % 2 == 0 ? le : lf;
    const double other = n % 2 == 0 ? lf : le;
    const double rhs = log_phi_sqrt((p1 - p0) * l5 + (p2 - p1) * l3 + own);
    int k = kn + 1;
    while ((std::pow(10.0, k) - p0) * l3 + other >= rhs) ++k;
    CHECK(k == st.k[static_cast<std::size_t>(n) + 1]);
    // Fails one step earlier unless that step is k_n itself.
    if (k - 1 > kn) {
      CHECK((std::pow(10.0, k - 1) - p0) * l3 + other >= rhs);
    }
    const double pk = std::pow(10.0, k);
    const double sparse = (p1 - p0) * l5 + (pk - p1) * l3 + own;
    const double dense = (pk - p0) * l3 + other;
    if (n % 2 == 0) {
      le = sparse;
      lf = dense;
    } else {
      lf = sparse;
      le = dense;
    }
    ks.push_back(k);
    CHECK(st.log_e_marks[static_cast<std::size_t>(n) + 1] == doctest::Approx(le).epsilon(1e-12));
    CHECK(st.log_f_marks[static_cast<std::size_t>(n) + 1] == doctest::Approx(lf).epsilon(1e-12));
  }
  CHECK(ks[1] == 3);
  for (std::size_t n = 1; n < st.log_r.size(); ++n) CHECK(st.log_r[n] < st.log_r[n - 1]);

  CHECK(sp.f.offset() == 2.0);
  CHECK(sp.e.ratio_at(1) == 0.2);
  CHECK(sp.e.ratio_at(11) == doctest::Approx(1.0 / 3.0));
  CHECK(sp.f.ratio_at(1001) == 0.2);
  CHECK(sp.f.ratio_at(1) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("stability schedule overflow carries the partial state") {
  CHECK_THROWS_AS(build_stability_pair(ScaleFunction::power_law(0.5), 6, 8),
                  ScheduleOverflowError);
}

TEST_CASE("carpet closed forms") {
  const CarpetParams c{2, 100, {1, 100}};
  const CarpetDimensions d = carpet_dimensions(c);
  CHECK(d.hausdorff == doctest::Approx(std::log(3.0) / std::log(2.0)).epsilon(1e-12));
  CHECK(d.box == doctest::Approx(1.0 + std::log(101.0 / 2.0) / std::log(100.0)).epsilon(1e-12));
  CHECK(d.assouad == 2.0);
  CHECK_THROWS_AS(validate(CarpetParams{2, 100, {1, 101}}), InputError);
  CHECK_THROWS_AS(validate(CarpetParams{2, 100, {1, 2, 3}}), InputError);
}

TEST_CASE("translation and ids") {
  const SetModel m(SequenceSetModel{1.0, 100, 0.0});
  const SetModel t = translate(m, 10.0);
  CHECK(t.hull().lo == 10.0);
  CHECK(t.id() != m.id());
  CHECK(m.kind() == "sequence");
  CHECK(make_single_point(0.25).hull().lo == 0.25);
}
