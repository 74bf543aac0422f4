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

#include "phidim/scale_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "phidim/error.hpp"
#include "phidim/log_math.hpp"

namespace phidim {
namespace {

constexpr double kClipSlack = 1e-12;

// Larger root u of c*u = log u, so that exp(-e^{cu}) <= e^{-u} beyond it.
double stretched_exp_threshold(double c) {
  if (c >= 1.0 / std::exp(1.0)) return 0.0;
  double lo = 1.0 / c;
  double hi = lo;
  while (c * hi - std::log(hi) < 0.0) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (c * mid - std::log(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

double interpolate(const Tabulated& t, double log_delta) {
  const auto& x = t.log_delta;
  const auto& y = t.log_phi;
  if (log_delta < x.front() - kClipSlack * std::abs(x.front()) ||
      log_delta > x.back() + kClipSlack * std::abs(x.back())) {
    throw DomainError("tabulated scale function evaluated outside its table");
  }
  if (x.size() == 1) return std::min(y.front(), log_delta);
  auto it = std::upper_bound(x.begin(), x.end(), log_delta);
  std::size_t hi = static_cast<std::size_t>(it - x.begin());
  hi = std::clamp<std::size_t>(hi, 1, x.size() - 1);
  const std::size_t lo = hi - 1;
  const double t_frac = std::clamp((log_delta - x[lo]) / (x[hi] - x[lo]), 0.0, 1.0);
  const double v = y[lo] + t_frac * (y[hi] - y[lo]);
  return std::min(v, log_delta);
}

Tabulated make_table(std::vector<std::pair<double, double>> pts) {
  if (pts.empty()) throw InvalidFunctionError("tabulated: no breakpoints");
  std::sort(pts.begin(), pts.end());
  Tabulated t;
  for (const auto& [ld, lp] : pts) {
    if (!std::isfinite(ld) || ld >= 0.0) {
      throw InvalidFunctionError("tabulated: delta must lie in (0, 1)");
    }
    if (std::isnan(lp) || lp == kPosInf) {
      throw InvalidFunctionError("tabulated: value must be positive");
    }
    if (lp > ld + kClipSlack * std::abs(ld)) {
      throw InvalidFunctionError("tabulated: value exceeds delta");
    }
    if (!t.log_delta.empty() && ld == t.log_delta.back()) {
      throw InvalidFunctionError("tabulated: duplicate delta");
    }
    if (!t.log_phi.empty() && lp < t.log_phi.back()) {
      throw InvalidFunctionError("tabulated: values must be nondecreasing");
    }
    t.log_delta.push_back(ld);
    t.log_phi.push_back(std::min(lp, ld));
  }
  return t;
}

std::vector<double> finest_half(const ScaleFunction& phi,
                                const DeltaGrid& grid) {
  std::vector<double> inside;
  for (double ld : grid.log_deltas()) {
    if (phi.in_domain(ld)) inside.push_back(ld);
  }
  if (inside.size() < 8) {
    throw ConfigError("grid has fewer than 8 points inside the domain");
  }
  return {inside.begin() + static_cast<long>(inside.size() / 2), inside.end()};
}

bool leq(double a, double b) {
  return a <= b + 1e-12 * std::max(1.0, std::abs(b));
}

std::string label_for(bool ok) {
  return ok ? "sufficient-condition satisfied"
            : "sufficient-condition violated";
}

}  // namespace

ScaleFunction::ScaleFunction(Variant v, double log_domain_upper)
    : variant_(std::move(v)), log_domain_upper_(log_domain_upper) {}

ScaleFunction ScaleFunction::power_law(double theta) {
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw InvalidFunctionError("power law exponent must lie in (0, 1]");
  }
  return ScaleFunction(PowerLaw{theta}, 0.0);
}

ScaleFunction ScaleFunction::log_corrected() {
  return ScaleFunction(LogCorrected{}, -1.0);
}

ScaleFunction ScaleFunction::stretched_exp(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw InvalidFunctionError("stretched exponential needs c > 0");
  }
  return ScaleFunction(StretchedExp{c}, -stretched_exp_threshold(c));
}

ScaleFunction ScaleFunction::tabulated(
    std::vector<std::pair<double, double>> pts) {
  Tabulated t = make_table(std::move(pts));
  const double upper = t.log_delta.back();
  return ScaleFunction(std::move(t), upper);
}

ScaleFunction ScaleFunction::min_family(std::vector<ScaleFunction> members,
                                        std::vector<double> log_activation) {
  if (members.empty()) throw InvalidFunctionError("min family: no members");
  if (members.size() != log_activation.size()) {
    throw InvalidFunctionError("min family: activation list size mismatch");
  }
  log_activation.front() = kPosInf;
  const double upper = members.front().log_domain_upper();
  return ScaleFunction(MinFamily{std::move(members), std::move(log_activation)},
                       upper);
}

ScaleFunction ScaleFunction::phi_s(double s, Tabulated table,
                                   std::string model_id) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < table.log_delta.size(); ++i) {
    pts.emplace_back(table.log_delta[i], table.log_phi[i]);
  }
  Tabulated t = make_table(std::move(pts));
  const double upper = t.log_delta.back();
  return ScaleFunction(PhiSFunction{s, std::move(t), std::move(model_id)},
                       upper);
}

ScaleFunction ScaleFunction::with_domain_upper(double log_y) const {
  ScaleFunction copy = *this;
  copy.log_domain_upper_ = std::min(log_domain_upper_, log_y);
  return copy;
}

bool ScaleFunction::in_domain(double log_delta) const {
  if (!std::isfinite(log_delta)) return false;
  if (const auto* t = std::get_if<Tabulated>(&variant_)) {
    return log_delta >= t->log_delta.front() &&
           log_delta <= std::min(t->log_delta.back(), log_domain_upper_);
  }
  if (const auto* p = std::get_if<PhiSFunction>(&variant_)) {
    return log_delta >= p->table.log_delta.front() &&
           log_delta <= std::min(p->table.log_delta.back(), log_domain_upper_);
  }
  if (const auto* m = std::get_if<MinFamily>(&variant_)) {
    if (log_delta > log_domain_upper_) return false;
    if (!m->members.front().in_domain(log_delta)) return false;
    for (std::size_t i = 0; i < m->members.size(); ++i) {
      if (log_delta <= m->log_activation[i] &&
          !m->members[i].in_domain(log_delta)) {
        return false;
      }
    }
    return true;
  }
  return log_delta < log_domain_upper_;
}

double ScaleFunction::log_domain_lower() const {
  if (const auto* t = std::get_if<Tabulated>(&variant_)) {
    return t->log_delta.front();
  }
  if (const auto* p = std::get_if<PhiSFunction>(&variant_)) {
    return p->table.log_delta.front();
  }
  if (const auto* m = std::get_if<MinFamily>(&variant_)) {
    double lo = kNegInf;
    for (const auto& f : m->members) lo = std::max(lo, f.log_domain_lower());
    return lo;
  }
  return kNegInf;
}

double ScaleFunction::eval_log(double log_delta) const {
  if (!in_domain(log_delta)) {
    throw DomainError("scale function evaluated outside its domain (log delta " +
                      format_double(log_delta) + ")");
  }
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PowerLaw>) {
          return log_delta / v.theta;
        } else if constexpr (std::is_same_v<T, LogCorrected>) {
          return log_delta - std::log(-log_delta);
        } else if constexpr (std::is_same_v<T, StretchedExp>) {
          return -std::exp(-v.c * log_delta);
        } else if constexpr (std::is_same_v<T, Tabulated>) {
          return interpolate(v, log_delta);
        } else if constexpr (std::is_same_v<T, PhiSFunction>) {
          return interpolate(v.table, log_delta);
        } else {
          double best = kPosInf;
          for (std::size_t i = 0; i < v.members.size(); ++i) {
            if (log_delta <= v.log_activation[i]) {
              best = std::min(best, v.members[i].eval_log(log_delta));
            }
          }
          return best;
        }
      },
      variant_);
}

double ScaleFunction::eval(double delta) const {
  if (!(delta > 0.0)) throw DomainError("scale function needs delta > 0");
  return std::exp(eval_log(std::log(delta)));
}

std::string_view ScaleFunction::variant_name() const {
  static constexpr std::string_view kNames[] = {
      "power_law", "log_corrected", "stretched_exp",
      "tabulated", "min_family",    "phi_s"};
  return kNames[variant_.index()];
}

std::string ScaleFunction::describe() const {
  std::ostringstream os;
  os << variant_name();
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PowerLaw>) {
          os << "(" << format_double(v.theta) << ")";
        } else if constexpr (std::is_same_v<T, StretchedExp>) {
          os << "(" << format_double(v.c) << ")";
        } else if constexpr (std::is_same_v<T, Tabulated>) {
          os << "(" << v.log_delta.size() << " points)";
        } else if constexpr (std::is_same_v<T, PhiSFunction>) {
          os << "(s=" << format_double(v.s) << ", " << v.model_id << ")";
        } else if constexpr (std::is_same_v<T, MinFamily>) {
          os << "(" << v.members.size() << " members)";
        }
      },
      variant_);
  return os.str();
}

double eval_phi(const ScaleFunction& phi, double delta) {
  return phi.eval(delta);
}

double eval_phi_log(const ScaleFunction& phi, double log_delta) {
  return phi.eval_log(log_delta);
}

ExponentPair exponent_pair(const ScaleFunction& phi, const DeltaGrid& grid) {
  const std::vector<double> tail = finest_half(phi, grid);
  double lo = kPosInf;
  double hi = kNegInf;
  for (double ld : tail) {
    const double lp = phi.eval_log(ld);
    const double ratio = lp == kNegInf ? 0.0 : ld / lp;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  return {std::clamp(lo, 0.0, 1.0), std::clamp(hi, 0.0, 1.0), grid.spec()};
}

ComparisonReport precedes(const ScaleFunction& phi1, const ScaleFunction& phi,
                          std::span<const double> alphas,
                          const DeltaGrid& grid) {
  ComparisonReport report;
  report.grid_spec = grid.spec();
  const std::vector<double> tail = finest_half(phi, grid);
  for (double alpha : alphas) {
    if (!(alpha > 1.0)) throw ConfigError("comparison alphas must exceed 1");
    for (double ld : tail) {
      if (!phi1.in_domain(alpha * ld)) continue;
      const double lhs = phi1.eval_log(alpha * ld);
      const double rhs = phi.eval_log(ld) / alpha;
      ++report.points_checked;
      if (!leq(lhs, rhs) && !report.witness) {
        report.witness = ComparisonWitness{alpha, ld, lhs, rhs};
      }
    }
  }
  if (report.points_checked == 0) {
    throw DomainError("comparison: no grid point inside both domains");
  }
  report.satisfied = !report.witness.has_value();
  report.label = label_for(report.satisfied);
  return report;
}

ComparisonReport equivalent(const ScaleFunction& phi, const ScaleFunction& phi1,
                            std::span<const double> alphas,
                            const DeltaGrid& grid) {
  ComparisonReport report;
  report.grid_spec = grid.spec();
  const std::vector<double> tail = finest_half(phi1, grid);
  for (double alpha : alphas) {
    if (!(alpha > 1.0)) throw ConfigError("comparison alphas must exceed 1");
    for (double ld : tail) {
      if (!phi.in_domain(alpha * ld) || !phi.in_domain(ld / alpha)) continue;
      const double mid = phi1.eval_log(ld);
      const double left = alpha * phi.eval_log(alpha * ld);
      const double right = phi.eval_log(ld / alpha) / alpha;
      ++report.points_checked;
      if (report.witness) continue;
      if (!leq(left, mid)) {
        report.witness = ComparisonWitness{alpha, ld, left, mid};
      } else if (!leq(mid, right)) {
        report.witness = ComparisonWitness{alpha, ld, mid, right};
      }
    }
  }
  if (report.points_checked == 0) {
    throw DomainError("comparison: no grid point inside both domains");
  }
  report.satisfied = !report.witness.has_value();
  report.label = label_for(report.satisfied);
  return report;
}

}  // namespace phidim
