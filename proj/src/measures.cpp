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

#include "phidim/measures.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "phidim/error.hpp"
#include "phidim/estimator.hpp"
#include "phidim/log_math.hpp"

namespace phidim {
namespace {

constexpr double kMaxCubeIndex = 1125899906842624.0;  // 2^50
constexpr double kEdgeEps = 1e-9;
constexpr double kMaxRadii = 65536.0;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

double slope_of(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace

double AtomicMeasure::total() const {
  double t = 0.0;
  for (const Atom& a : atoms) t += a.mass;
  return t;
}

double BallMassReport::c_observed() const { return std::exp(log_c_observed); }

AtomicMeasure build_frostman_measure(const SetModel& model, double s,
                                     double log_delta, const ScaleFunction& phi,
                                     const FrostmanOptions& opt) {
  if (!(s >= 0.0 && s <= 1.0)) throw InputError("s must lie in [0, 1]");
  if (opt.base < 2) throw InputError("cube base must be at least 2");
  if (!(log_delta < 0.0)) throw InputError("delta must lie in (0, 1)");
  const double log_b = std::log(static_cast<double>(opt.base));
  const double log_lo = phi.eval_log(log_delta);
  const double mf = std::floor((-kLog2 - log_lo) / log_b);
  if (mf < 0.0) throw WindowError("window too wide: no cube level fits");
  if (mf * log_b > std::log(kMaxCubeIndex)) {
    throw WindowError("cube level too fine for 64-bit indexing");
  }
  const int m = static_cast<int>(mf);
  const double lf = std::floor(mf + (log_delta - std::log(8.0)) / log_b);
  const int l = static_cast<int>(std::clamp(lf, 0.0, mf));

  const double cubes_per_unit = std::exp(mf * log_b);
  const double width = 1.0 / cubes_per_unit;
  const Skeleton skel = skeleton(model, -mf * log_b);

  AtomicMeasure mu;
  mu.base = opt.base;
  mu.m = m;
  mu.l = l;
  mu.s = s;
  const double atom_mass = std::exp(-mf * log_b * s);
  for (const Interval& it : skel) {
    const double a = it.lo * cubes_per_unit;
    const double b = it.hi * cubes_per_unit;
    if (std::fabs(a) > kMaxCubeIndex || std::fabs(b) > kMaxCubeIndex) {
      throw WindowError("cube index overflow");
    }
    const auto first = static_cast<std::int64_t>(std::floor(a + kEdgeEps));
    auto last = static_cast<std::int64_t>(std::ceil(b - kEdgeEps)) - 1;
    last = std::max(last, first);
    if (static_cast<double>(last - first) + static_cast<double>(mu.atoms.size()) >
        static_cast<double>(opt.max_atoms)) {
      throw ResolutionError("Frostman construction exceeds the atom limit");
    }
    for (std::int64_t q = first; q <= last; ++q) {
      if (!mu.atoms.empty() && mu.atoms.back().cube >= q) continue;
      const double loc = q == first ? it.lo : static_cast<double>(q) * width;
      mu.atoms.push_back({loc, atom_mass, q});
    }
  }
  if (mu.atoms.empty()) throw InputError("model has an empty skeleton");

  const std::int64_t b = opt.base;
  for (int k = 0; k < l; ++k) {
    const std::int64_t div = ipow(b, k + 1);
    const double cap = std::exp(-static_cast<double>(m - k - 1) * log_b * s);
    std::size_t i = 0;
    while (i < mu.atoms.size()) {
      const std::int64_t parent = floor_div(mu.atoms[i].cube, div);
      std::size_t j = i;
      double sum = 0.0;
      while (j < mu.atoms.size() && floor_div(mu.atoms[j].cube, div) == parent) {
        sum += mu.atoms[j].mass;
        ++j;
      }
      if (sum > cap) {
        const double scale = cap / sum;
        for (std::size_t t = i; t < j; ++t) mu.atoms[t].mass *= scale;
      }
      i = j;
    }
  }
  const double total = mu.total();
  mu.log_prenormalization_total = std::log(total);
  for (Atom& a : mu.atoms) a.mass /= total;
  return mu;
}

std::vector<std::pair<std::int64_t, double>> cube_masses(
    const AtomicMeasure& mu, int level, bool normalized) {
  if (level > mu.m || level < 0) throw InputError("cube level out of range");
  const std::int64_t div = ipow(mu.base, mu.m - level);
  const double scale = normalized ? 1.0 : std::exp(mu.log_prenormalization_total);
  std::vector<std::pair<std::int64_t, double>> out;
  for (const Atom& a : mu.atoms) {
    const std::int64_t q = floor_div(a.cube, div);
    if (out.empty() || out.back().first != q) out.emplace_back(q, 0.0);
    out.back().second += a.mass * scale;
  }
  return out;
}

std::vector<double> default_radii(ScaleWindow w, int count) {
  if (count < 2) throw InputError("need at least two radii");
  const double octaves = (w.log_hi - w.log_lo) / kLog2;
  if (octaves > kMaxRadii) throw InputError("window too wide for a radius scan");
  count = std::max(count, static_cast<int>(std::ceil(octaves)) + 1);
  std::vector<double> r(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    r[static_cast<std::size_t>(i)] =
        std::exp(w.log_lo + t * (w.log_hi - w.log_lo));
  }
  r.front() = w.lo();
  r.back() = w.hi();
  return r;
}

BallMassReport verify_ball_mass(const AtomicMeasure& mu, ScaleWindow w,
                                double s, std::span<const double> radii) {
  if (radii.empty()) throw InputError("no radii given");
  if (mu.atoms.empty()) throw InputError("measure has no atoms");
  const double tol = 1e-12;
  for (double r : radii) {
    if (!(r > 0.0) || std::log(r) < w.log_lo - tol || std::log(r) > w.log_hi + tol) {
      throw InputError("radius outside the scale window");
    }
  }
  const std::size_t n = mu.atoms.size();
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + mu.atoms[i].mass;

  BallMassReport best;
  best.log_c_observed = kNegInf;
  for (double r : radii) {
    const double lr = std::log(r);
    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double end = mu.atoms[i].location + 2.0 * r;
      j = std::max(j, i);
      while (j < n && mu.atoms[j].location < end) ++j;
      const double mass = prefix[j] - prefix[i];
      const double lc = std::log(mass) - s * lr;
      if (lc > best.log_c_observed) {
        best = {lc, mu.atoms[i].location + r, r, mass};
      }
    }
  }
  return best;
}

BallMassReport verify_ball_mass(const AtomicMeasure& mu, ScaleWindow w,
                                double s) {
  const auto radii = default_radii(w);
  return verify_ball_mass(mu, w, s, radii);
}

MassCertificate mass_lower_bound(const AtomicMeasure& mu, ScaleWindow w,
                                 double s, double a, double c_ball) {
  (void)w;
  if (!(c_ball > 0.0) || !std::isfinite(c_ball)) {
    throw InputError("ball constant must be positive");
  }
  const double total = mu.total();
  if (!(a >= 0.0) || a > total * (1.0 + 1e-12)) {
    throw InputError("mass a must lie in [0, total mass]");
  }
  MassCertificate c;
  c.a = a;
  c.s = s;
  c.c_ball = c_ball;
  c.c_set = std::exp(s * kLog2) * c_ball;
  c.certified = a > 0.0;
  c.log_cost_bound = a > 0.0 ? std::log(a) - std::log(c.c_set) : kNegInf;
  return c;
}

RoundtripReport massfrostman_roundtrip(const SetModel& model,
                                       const ScaleFunction& phi,
                                       std::span<const double> s_grid,
                                       const DeltaGrid& grid,
                                       const FrostmanOptions& opt, double tol) {
  if (s_grid.empty()) throw InputError("empty s grid");
  if (grid.size() < 3) throw InputError("roundtrip needs at least three scales");
  if (!std::is_sorted(s_grid.begin(), s_grid.end())) {
    throw InputError("s grid must be increasing");
  }
  RoundtripReport rep;
  rep.grid_spec = grid.spec();
  rep.log_deltas.assign(grid.log_deltas().begin(), grid.log_deltas().end());
  std::vector<double> x;
  rep.cover_lower = kPosInf;
  rep.cover_upper = kNegInf;
  for (double ld : rep.log_deltas) {
    x.push_back(-ld);
    const ExponentBracket e = critical_exponent(model, phi, ld, tol);
    rep.cover_lower = std::min(rep.cover_lower, e.s_lower);
    rep.cover_upper = std::max(rep.cover_upper, e.s_upper);
  }
  for (double s : s_grid) {
    RoundtripRow row;
    row.s = s;
    for (double ld : rep.log_deltas) {
      const ScaleWindow w{phi.eval_log(ld), ld};
      const AtomicMeasure mu = build_frostman_measure(model, s, ld, phi, opt);
      row.log_c.push_back(verify_ball_mass(mu, w, s).log_c_observed);
    }
    row.slope = slope_of(x, row.log_c);
    rep.rows.push_back(std::move(row));
  }
  // Largest s whose constants do not grow with the scale.
  rep.measure_estimate = s_grid.front();
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    if (rep.rows[i].slope > 0.0) {
      if (i > 0) {
        const double y0 = rep.rows[i - 1].slope;
        const double y1 = rep.rows[i].slope;
        const double s0 = rep.rows[i - 1].s;
        const double s1 = rep.rows[i].s;
        rep.measure_estimate = s0 + (s1 - s0) * (0.0 - y0) / (y1 - y0);
      }
      break;
    }
    rep.measure_estimate = rep.rows[i].s;
  }
  rep.distance = std::max({0.0, rep.cover_lower - rep.measure_estimate,
                           rep.measure_estimate - rep.cover_upper});
  return rep;
}

}  // namespace phidim
