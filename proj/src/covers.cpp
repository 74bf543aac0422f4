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

#include "phidim/covers.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "phidim/error.hpp"
#include "phidim/log_math.hpp"

namespace phidim {
namespace {

constexpr int kLookahead = 24;
constexpr double kLenSlack = 1e-12;
constexpr std::int64_t kLocalLevels = 10;
const double kRefine = std::log(16.0);

// log(floor(e^x) + 1) for x >= 0.
double log_floor_plus_one(double x) {
  if (x > 36.0) return x;
  return std::log(std::floor(std::exp(x) * (1.0 + 1e-14)) + 1.0);
}

void check_exponent(double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) {
    throw InputError("cover cost: exponent must be finite and >= 0");
  }
}

// Piece j of the mass bound: diameters d with g_{j+1} <= d < g_j lie inside
// a single level-j interval.
double mass_piece(const CantorSchedule& sch, ScaleWindow w, double s,
                  std::int64_t level, std::int64_t j) {
  const double log_gj = sch.log_gap(j);
  const double log_right = std::min(w.log_hi, log_gj);
  const double log_g_next = j < level ? sch.log_gap(j + 1) : kNegInf;
  const double log_left = std::max(w.log_lo, log_g_next);
  if (log_left > log_right) return kNegInf;
  if (log_left == log_right && log_right == log_gj) return kNegInf;
  if (j == level) return -static_cast<double>(level) * kLog2 - s * log_left;

  const double cap = -static_cast<double>(j) * kLog2;
  const double base = -static_cast<double>(j + 1) * kLog2;
  // Largest mass of an end segment of a level-(j+1) interval of length e^x.
  auto end_mass = [&](double x) {
    std::int64_t k = x == kNegInf ? level : sch.finest_level_above(x);
    k = std::clamp(k, j + 1, level);
    return -static_cast<double>(k) * kLog2;
  };
  auto mass = [&](double log_d1) {
    const double straddle = log_add(end_mass(log_d1), end_mass(log_d1 - kLog2));
    return std::min(cap, std::max(base, straddle));
  };

  const std::int64_t k_max = std::min(j + kLookahead, level);
  double best;
  if (k_max < level &&
      log_left < log_add(log_g_next, sch.log_length(k_max))) {
    const double tail = std::min(
        cap, log_add(base, -static_cast<double>(k_max - 1) * kLog2));
    best = tail - s * log_left;
  } else {
    best = mass(log_sub(log_left, log_g_next)) - s * log_left;
  }
  for (std::int64_t k = j + 1; k <= k_max; ++k) {
    const double le = sch.log_length(k);
    for (double d1 : {le, le + kLog2}) {
      const double log_d = log_add(log_g_next, d1);
      if (log_d <= log_left || log_d > log_right) continue;
      if (log_d == log_right && log_right == log_gj) continue;
      best = std::max(best, mass(d1) - s * log_d);
    }
  }
  return best;
}

// Level-k intervals inside one level-j interval, rescaled to unit length.
Skeleton local_intervals(const CantorSchedule& sch, std::int64_t j,
                         std::int64_t k) {
  const double base = sch.log_length(j);
  std::vector<double> starts{0.0};
  for (std::int64_t i = j + 1; i <= k; ++i) {
    const double prev = std::exp(sch.log_length(i - 1) - base);
    const double len = std::exp(sch.log_length(i) - base);
    std::vector<double> next;
    next.reserve(starts.size() * 2);
    for (double x : starts) {
      next.push_back(x);
      next.push_back(x + prev - len);
    }
    starts = std::move(next);
  }
  const double len = std::exp(sch.log_length(k) - base);
  Skeleton out;
  out.reserve(starts.size());
  for (double x : starts) out.push_back({x, x + len});
  return out;
}

std::vector<double> product_lengths(const SetModel& m, ScaleWindow w) {
  std::vector<double> out;
  const auto* c = m.get_if<CantorSchedule>();
  if (!c) return out;
  const std::int64_t jh = c->coarsest_level_at_most(w.log_hi);
  const std::int64_t jl = std::min(c->finest_level_at_least(w.log_lo), c->depth());
  if (jh > jl) return out;
  if (jl - jh <= 256) {
    for (std::int64_t j = jh; j <= jl; ++j) out.push_back(c->log_length(j));
  } else {
    out.push_back(c->log_length(jh));
    out.push_back(c->log_length(jl));
    for (std::int64_t b : c->boundaries()) {
      if (b > jh && b < jl) out.push_back(c->log_length(b));
    }
  }
  return out;
}

bool is_single_point(const SetModel& m) {
  const auto* p = m.get_if<PointSetModel>();
  return p && p->points.size() == 1;
}

// Lower bound on the cost from a natural measure, when the model has one.
std::optional<double> measure_lower(const SetModel& m, ScaleWindow w,
                                    double s) {
  if (const auto* c = m.get_if<CantorSchedule>()) {
    return -cantor_log_sup_mass_ratio(*c, w, s, c->depth());
  }
  if (is_single_point(m)) return s * w.log_lo;
  return std::nullopt;
}

}  // namespace

ScaleWindow ScaleWindow::from_logs(double log_lo, double log_hi) {
  if (std::isnan(log_lo) || std::isnan(log_hi) || log_lo == kNegInf ||
      log_hi == kPosInf) {
    throw WindowError("window bounds must be positive and finite");
  }
  if (log_lo > log_hi) throw WindowError("window needs lo <= hi");
  return {log_lo, log_hi};
}

ScaleWindow ScaleWindow::from_values(double lo, double hi) {
  if (!(lo > 0.0) || !(hi > 0.0)) {
    throw WindowError("window bounds must be positive");
  }
  return from_logs(std::log(lo), std::log(hi));
}

double ScaleWindow::lo() const { return std::exp(log_lo); }
double ScaleWindow::hi() const { return std::exp(log_hi); }

std::string_view to_string(CoverMethod m) {
  switch (m) {
    case CoverMethod::kExactDp:
      return "exact-dp";
    case CoverMethod::kSingleLevel:
      return "single-level";
    case CoverMethod::kTwoScaleAnalytic:
      return "two-scale-analytic";
    case CoverMethod::kProduct:
      return "product";
    case CoverMethod::kExhaustive:
      return "exhaustive";
  }
  return "unknown";
}

Skeleton subdivide(std::span<const Interval> skel, double max_len) {
  Skeleton out;
  out.reserve(skel.size());
  for (const Interval& it : skel) {
    const double len = it.length();
    if (len <= max_len * (1.0 + kLenSlack)) {
      out.push_back(it);
      continue;
    }
    const auto pieces = static_cast<std::int64_t>(std::ceil(len / max_len * (1.0 - 1e-14)));
    const double step = len / static_cast<double>(pieces);
    for (std::int64_t i = 0; i < pieces; ++i) {
      const double a = it.lo + static_cast<double>(i) * step;
      const double b =
          i + 1 == pieces ? it.hi : it.lo + static_cast<double>(i + 1) * step;
      out.push_back({a, b});
    }
  }
  return out;
}

CoverCost cover_cost_dp(std::span<const Interval> skel, ScaleWindow w, double s,
                        bool want_pieces) {
  check_exponent(s);
  if (skel.empty()) throw InputError("cover dp: empty skeleton");
  const double hi = w.hi();
  const double hi_cut = hi * (1.0 + kLenSlack);
  const std::size_t n = skel.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (skel[i].length() > hi_cut) {
      throw InputError("cover dp: skeleton interval longer than window hi");
    }
    if (i > 0 && skel[i].lo < skel[i - 1].hi) {
      throw InputError("cover dp: skeleton must be sorted and disjoint");
    }
  }
  std::vector<double> best(n + 1, kPosInf);
  std::vector<std::size_t> next(n + 1, n);
  best[n] = kNegInf;
  for (std::size_t i = n; i-- > 0;) {
    const double a = skel[i].lo;
    for (std::size_t j = i; j < n; ++j) {
      const double span = skel[j].hi - a;
      if (span > hi_cut) break;
      const double log_d = span > 0.0 ? std::max(std::log(span), w.log_lo) : w.log_lo;
      const double v = log_add(s * log_d, best[j + 1]);
      if (v < best[i]) {
        best[i] = v;
        next[i] = j + 1;
      }
    }
  }
  CoverCost out{best[0], best[0], CoverMethod::kExactDp, std::nullopt};
  if (want_pieces) {
    std::vector<Interval> pieces;
    const double lo = w.lo();
    for (std::size_t i = 0; i < n; i = next[i]) {
      const double span = skel[next[i] - 1].hi - skel[i].lo;
      pieces.push_back({skel[i].lo, skel[i].lo + std::max(span, lo)});
    }
    out.pieces = std::move(pieces);
  }
  return out;
}

CoverCost cover_cost_exhaustive(std::span<const double> points, ScaleWindow w,
                                double s, std::span<const double> diameters) {
  check_exponent(s);
  if (points.empty()) throw InputError("exhaustive: no points");
  if (points.size() > 8) throw InputError("exhaustive: at most 8 points");
  if (diameters.empty() || diameters.size() > 32) {
    throw InputError("exhaustive: diameter grid must have 1..32 values");
  }
  const double lo = w.lo();
  const double hi = w.hi();
  std::vector<double> grid;
  for (double d : diameters) {
    if (d < lo * (1.0 - kLenSlack) || d > hi * (1.0 + kLenSlack)) {
      throw InputError("exhaustive: diameter outside the window");
    }
    grid.push_back(d);
  }
  std::sort(grid.begin(), grid.end());
  const std::size_t n = points.size();
  // Restricted growth strings enumerate every set partition once.
  std::vector<std::size_t> label(n, 0);
  std::vector<std::size_t> max_label(n, 0);
  double best = kPosInf;
  while (true) {
    const std::size_t blocks = *std::max_element(label.begin(), label.end()) + 1;
    double total = kNegInf;
    bool feasible = true;
    for (std::size_t b = 0; b < blocks && feasible; ++b) {
      double mn = kPosInf;
      double mx = kNegInf;
      for (std::size_t i = 0; i < n; ++i) {
        if (label[i] == b) {
          mn = std::min(mn, points[i]);
          mx = std::max(mx, points[i]);
        }
      }
      const double span = mx - mn;
      auto it = std::lower_bound(grid.begin(), grid.end(), span);
      if (it == grid.end()) {
        feasible = false;
        break;
      }
      total = log_add(total, s * std::log(*it));
    }
    if (feasible) best = std::min(best, total);
    // Advance to the next restricted growth string.
    std::size_t i = n;
    while (i-- > 1) {
      if (label[i] <= max_label[i - 1]) break;
    }
    if (i == 0) break;
    ++label[i];
    max_label[i] = std::max(max_label[i - 1], label[i]);
    for (std::size_t k = i + 1; k < n; ++k) {
      label[k] = 0;
      max_label[k] = max_label[i];
    }
  }
  if (best == kPosInf) throw InputError("exhaustive: no feasible cover");
  return {best, best, CoverMethod::kExhaustive, std::nullopt};
}

double cantor_log_sup_mass_ratio(const CantorSchedule& sch, ScaleWindow w,
                                 double s, std::int64_t level) {
  check_exponent(s);
  level = std::clamp<std::int64_t>(level, 0, sch.depth());
  const std::int64_t ja = sch.last_level_gap_above(w.log_hi, level);
  const std::int64_t jb = sch.last_level_gap_above(w.log_lo, level);
  std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
  ranges.emplace_back(ja, ja + 3);
  ranges.emplace_back(jb - 3, jb);
  for (std::int64_t b : sch.boundaries()) {
    ranges.emplace_back(b - kLookahead - 4, b + 4);
  }
  ranges.emplace_back(level - kLookahead - 4, level);
  for (auto& r : ranges) {
    r.first = std::max(r.first, ja);
    r.second = std::min(r.second, jb);
  }
  std::sort(ranges.begin(), ranges.end());
  std::vector<std::pair<std::int64_t, std::int64_t>> merged;
  for (const auto& r : ranges) {
    if (r.first > r.second) continue;
    if (!merged.empty() && r.first <= merged.back().second + 1) {
      merged.back().second = std::max(merged.back().second, r.second);
    } else {
      merged.push_back(r);
    }
  }
  // Between the special ranges the piece values are affine in j, so the
  // stretch endpoints are enough.
  std::set<std::int64_t> js;
  for (std::size_t i = 0; i < merged.size(); ++i) {
    for (std::int64_t j = merged[i].first; j <= merged[i].second; ++j) js.insert(j);
    if (i + 1 < merged.size()) {
      js.insert(merged[i].second + 1);
      js.insert(merged[i + 1].first - 1);
    }
  }
  double best = kNegInf;
  for (std::int64_t j : js) best = std::max(best, mass_piece(sch, w, s, level, j));
  return best;
}

CoverCost cover_cost_cantor(const CantorSchedule& sch, ScaleWindow w,
                            double s) {
  check_exponent(s);
  const std::int64_t depth = sch.depth();
  if (w.log_hi < sch.log_length(depth) - 1e-12 * std::abs(w.log_hi)) {
    throw ResolutionError("cantor: window lies below the deepest level");
  }
  const std::int64_t jh = sch.coarsest_level_at_most(w.log_hi);
  const std::int64_t jl = sch.finest_level_at_least(w.log_lo);
  double upper = kPosInf;
  auto level_cost = [&](std::int64_t j) {
    return static_cast<double>(j) * kLog2 + s * sch.log_length(j);
  };
  if (jh <= jl) {
    const std::int64_t last = std::min(jl, depth);
    upper = std::min(upper, level_cost(jh));
    upper = std::min(upper, level_cost(last));
    for (std::int64_t b : sch.boundaries()) {
      if (b > jh && b < last) upper = std::min(upper, level_cost(b));
    }
  }
  const std::int64_t jf = std::max(jh, jl + 1);
  if (jf <= depth) {
    upper = std::min(upper, static_cast<double>(jf) * kLog2 + s * w.log_lo);
  }
  if (jh >= 1) {
    const std::int64_t j = jh - 1;
    upper = std::min(upper, static_cast<double>(j) * kLog2 +
                                log_ceil(sch.log_length(j) - w.log_hi) +
                                s * w.log_hi);
  }
  double lower = -cantor_log_sup_mass_ratio(sch, w, s, depth);
  // Pieces cannot bridge level-j1 gaps, so the cost is 2^j1 copies of the
  // cost inside one level-j1 interval. When that local tree is small, the
  // exact cost on the left ends of its level-k intervals is a lower bound.
  // The upper bound stays single-level so that it is monotone in lo.
  const std::int64_t j1 = sch.last_level_gap_above(w.log_hi, depth);
  const std::int64_t k = std::min(depth, sch.coarsest_level_at_most(w.log_lo - kRefine));
  if (k >= j1 && k - j1 <= kLocalLevels) {
    const Skeleton local = local_intervals(sch, j1, k);
    const double le = sch.log_length(j1);
    const ScaleWindow rel{w.log_lo - le, w.log_hi - le};
    std::vector<Interval> ends;
    ends.reserve(local.size());
    for (const Interval& it : local) ends.push_back({it.lo, it.lo});
    const double shift = static_cast<double>(j1) * kLog2 + s * le;
    lower = std::max(lower, shift + cover_cost_dp(ends, rel, s).log_lower);
  }
  return {std::min(lower, upper), upper, CoverMethod::kSingleLevel,
          std::nullopt};
}

// Points whose gaps on both sides exceed hi each need their own piece. The
// remaining pieces leave at most P - 1 gaps uncovered, so their lengths sum to
// at least x_{m+P}, and each piece costs at least max(lo^s, L hi^(s-1)).
double sequence_lower(double p, ScaleWindow w, double s) {
  const double a = w.log_lo;
  const double b = w.log_hi;
  double m = 0.0;
  if (log_sequence_gap(p, 1.0) > b) {
    double lo = 0.0;
    double hi = 1.0;
    while (log_sequence_gap(p, std::exp(hi)) > b) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
      const double mid = 0.5 * (lo + hi);
      (log_sequence_gap(p, std::exp(mid)) > b ? lo : hi) = mid;
    }
    m = std::floor(std::exp(lo) * (1.0 - 1e-12));
  }
  const double rest = (s - 1.0) * b;
  auto excess = [&](double log_p) {
    return log_p + s * a + p * std::log(m + std::exp(log_p)) - rest;
  };
  double top = rest - s * a;
  double bottom = top - 1.0;
  while (excess(bottom) > 0.0) bottom = top - 2.0 * (top - bottom);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (bottom + top);
    (excess(mid) > 0.0 ? top : bottom) = mid;
  }
  const double tail = bottom + s * a;
  return m > 0.0 ? log_add(std::log(m) + s * a, tail) : tail;
}

CoverCost cover_cost_sequence_analytic(double p, ScaleWindow w, double s) {
  check_exponent(s);
  if (!(p > 0.0)) throw InputError("sequence cost: p must be positive");
  const double a = w.log_lo;
  const double b = w.log_hi;
  auto cluster = [&](double log_len) {
    if (log_len <= b) return s * std::max(log_len, a);
    return log_ceil(log_len - b) + s * b;
  };
  auto total = [&](double log_n) {
    if (log_n == kNegInf) return cluster(0.0);
    return log_add(log_n + s * a, cluster(-p * log_n));
  };
  const double log_n_max = std::max(0.0, log_ceil(-b / p));
  const double log_n_star = std::clamp(
      (std::log(p) + (s - 1.0) * b - s * a) / (p + 1.0), 0.0, log_n_max);
  std::vector<double> candidates{kNegInf, 0.0, log_n_max};
  if (log_n_star < 36.0) {
    const double n_star = std::exp(log_n_star);
    candidates.push_back(std::log(std::max(1.0, std::floor(n_star))));
    candidates.push_back(std::log(std::ceil(n_star)));
  } else {
    candidates.push_back(log_n_star);
  }
  double upper = kPosInf;
  for (double c : candidates) upper = std::min(upper, total(c));
  return {std::min(upper, sequence_lower(p, w, s)), upper,
          CoverMethod::kTwoScaleAnalytic, std::nullopt};
}

CoverCost cover_cost_dense(ScaleWindow w, double s) {
  check_exponent(s);
  const double log_h = w.log_lo;
  const double log_n = log_floor_plus_one(-log_h);
  const double log_m = log_floor_plus_one(w.log_hi - log_h);
  const double upper = log_ceil(log_n - log_m) + s * w.log_hi;
  // A piece holding c grid points has diameter at least max((c-1)h, lo).
  auto per_point = [&](double log_c) {
    if (log_c == 0.0) return s * log_h;
    const double log_c_minus_1 = log_sub(log_c, 0.0);
    return s * (log_c_minus_1 + log_h) - log_c;
  };
  double unit = per_point(0.0);
  if (log_m > 0.0) {
    unit = std::min({unit, per_point(std::log(2.0)), per_point(log_m)});
  }
  const double lower = std::min(upper, log_n + unit);
  return {lower, upper, CoverMethod::kSingleLevel, std::nullopt};
}

CoverCost cover_cost_product(const SetModel& a, const SetModel& b,
                             ScaleWindow w, double s,
                             const OracleOptions& opt) {
  check_exponent(s);
  if (a.ambient_dimension() != 1 || b.ambient_dimension() != 1) {
    throw UnsupportedError("product: marginals must be line models");
  }
  if (is_single_point(a)) return cover_cost(b, w, s, opt);
  if (is_single_point(b)) return cover_cost(a, w, s, opt);

  std::vector<double> lengths;
  constexpr int kGrid = 48;
  for (int i = 0; i < kGrid; ++i) {
    const double t = static_cast<double>(i) / (kGrid - 1);
    lengths.push_back(w.log_hi + t * (w.log_lo - w.log_hi));
  }
  for (const SetModel* m : {&a, &b}) {
    const auto extra = product_lengths(*m, w);
    lengths.insert(lengths.end(), extra.begin(), extra.end());
  }
  double upper = kPosInf;
  for (double log_l : lengths) {
    const ScaleWindow single{log_l, log_l};
    const double na = cover_cost(a, single, 0.0, opt).log_upper;
    const double nb = cover_cost(b, single, 0.0, opt).log_upper;
    upper = std::min(upper, na + nb + s * log_l);
  }

  double lower = kNegInf;
  constexpr int kSplits = 40;
  for (int order = 0; order < 2; ++order) {
    const SetModel& x = order == 0 ? a : b;
    const SetModel& y = order == 0 ? b : a;
    if (!measure_lower(y, w, 0.0)) continue;
    std::vector<double> splits{0.5 * s};
    for (int i = 0; i <= kSplits; ++i) splits.push_back(s * i / kSplits);
    for (double s2 : splits) {
      s2 = std::min(s2, s);
      const double s1 = s - s2;
      if (s1 > 1.0 || s2 > 1.0) continue;
      const double lx = cover_cost(x, w, s1, opt).log_lower;
      lower = std::max(lower, lx + *measure_lower(y, w, s2));
    }
  }
  return {std::min(lower, upper), upper, CoverMethod::kProduct, std::nullopt};
}

CoverCost cover_cost(const SetModel& model, ScaleWindow w, double s,
                     const OracleOptions& opt) {
  check_exponent(s);
  w = ScaleWindow::from_logs(w.log_lo, w.log_hi);
  if (w.log_hi > 1e-12) {
    throw InputError("cover cost: window hi must not exceed 1");
  }
  auto dp_on = [&](const SetModel& m) {
    Skeleton sk = subdivide(skeleton(m, w.log_lo), w.hi());
    if (sk.size() > opt.max_dp_elements) {
      throw ResolutionError("cover dp: skeleton exceeds the element cap");
    }
    return cover_cost_dp(sk, w, s);
  };
  return std::visit(
      [&](const auto& v) -> CoverCost {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SequenceSetModel>) {
          if (opt.prefer_exact) return dp_on(model);
          return cover_cost_sequence_analytic(v.p, w, s);
        } else if constexpr (std::is_same_v<T, CantorSchedule>) {
          return cover_cost_cantor(v, w, s);
        } else if constexpr (std::is_same_v<T, PointSetModel>) {
          return dp_on(model);
        } else if constexpr (std::is_same_v<T, DenseGridModel>) {
          return cover_cost_dense(w, s);
        } else if constexpr (std::is_same_v<T, UnionModel>) {
          if (v.gap > w.hi()) {
            CoverCost total{kNegInf, kNegInf, CoverMethod::kExactDp, std::nullopt};
            for (const SetModel& part : v.parts) {
              const CoverCost c = cover_cost(part, w, s, opt);
              total.log_lower = log_add(total.log_lower, c.log_lower);
              total.log_upper = log_add(total.log_upper, c.log_upper);
              if (c.method != CoverMethod::kExactDp) total.method = c.method;
            }
            return total;
          }
          return dp_on(model);
        } else if constexpr (std::is_same_v<T, ProductModel>) {
          return cover_cost_product(v.factors[0], v.factors[1], w, s, opt);
        } else if constexpr (std::is_same_v<T, HolderImageModel>) {
          return dp_on(model);
        } else {
          throw UnsupportedError("cover cost: carpets have closed forms only");
        }
      },
      model.variant());
}

}  // namespace phidim
