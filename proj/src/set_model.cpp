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

#include "phidim/set_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "phidim/error.hpp"
#include "phidim/log_math.hpp"

namespace phidim {
namespace {

constexpr std::int64_t kDenseCap = std::int64_t{1} << 22;

std::int64_t pow10(int k) {
  std::int64_t v = 1;
  for (int i = 0; i < k; ++i) v *= 10;
  return v;
}

Skeleton merge_close(Skeleton items, double resolution) {
  Skeleton out;
  for (const Interval& it : items) {
    if (!out.empty() && it.lo - out.back().hi < resolution) {
      out.back().hi = std::max(out.back().hi, it.hi);
    } else {
      out.push_back(it);
    }
  }
  return out;
}

// Runs of a schedule using ratio 1/5 on [a, b) level ranges, 1/3 elsewhere.
std::vector<RatioRun> runs_from_sparse(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& sparse,
    std::int64_t depth) {
  std::vector<RatioRun> runs;
  std::int64_t level = 1;
  for (auto [a, b] : sparse) {
    a = std::max<std::int64_t>(a, 1);
    b = std::min(b, depth + 1);
    if (a >= b) continue;
    if (a > level) runs.push_back({a - level, 1.0 / 3.0});
    runs.push_back({b - a, 1.0 / 5.0});
    level = b;
  }
  if (level <= depth) runs.push_back({depth - level + 1, 1.0 / 3.0});
  return runs;
}

}  // namespace

double log_sequence_gap(double p, double n) {
  return -p * std::log(n) + std::log(-std::expm1(-p * std::log1p(1.0 / n)));
}

double SequenceSetModel::log_scale_floor() const {
  return log_sequence_gap(p, static_cast<double>(n_trunc));
}

int CarpetParams::total() const {
  return std::accumulate(column_counts.begin(), column_counts.end(), 0);
}

SetModel::SetModel(Variant v)
    : node_(std::make_shared<const Variant>(std::move(v))) {}

std::string SetModel::kind() const {
  static const char* kNames[] = {"sequence", "cantor",  "points", "dense",
                                 "union",    "product", "holder", "carpet"};
  return kNames[node_->index()];
}

std::string SetModel::id() const {
  std::ostringstream os;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SequenceSetModel>) {
          os << "sequence(p=" << format_double(v.p) << ",N=" << v.n_trunc;
          if (v.offset != 0.0) os << ",offset=" << format_double(v.offset);
          os << ")";
        } else if constexpr (std::is_same_v<T, CantorSchedule>) {
          os << "cantor(depth=" << v.depth() << ",runs=" << v.runs().size();
          if (v.offset() != 0.0) os << ",offset=" << format_double(v.offset());
          os << ")";
        } else if constexpr (std::is_same_v<T, PointSetModel>) {
          os << "points(" << v.points.size() << ")";
        } else if constexpr (std::is_same_v<T, DenseGridModel>) {
          os << "dense(offset=" << format_double(v.offset) << ")";
        } else if constexpr (std::is_same_v<T, UnionModel>) {
          os << "union(";
          for (std::size_t i = 0; i < v.parts.size(); ++i) {
            os << (i ? "," : "") << v.parts[i].id();
          }
          os << ")";
        } else if constexpr (std::is_same_v<T, ProductModel>) {
          os << "product(" << v.factors[0].id() << "," << v.factors[1].id()
             << ")";
        } else if constexpr (std::is_same_v<T, HolderImageModel>) {
          os << "holder(alpha=" << format_double(v.alpha) << ","
             << v.base[0].id() << ")";
        } else {
          os << "carpet(m=" << v.m << ",n=" << v.n << ")";
        }
      },
      *node_);
  return os.str();
}

int SetModel::ambient_dimension() const {
  if (get_if<ProductModel>() || get_if<CarpetParams>()) return 2;
  return 1;
}

double SetModel::log_scale_floor(bool truncated_sequences) const {
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SequenceSetModel>) {
          return truncated_sequences ? v.log_scale_floor() : kNegInf;
        } else if constexpr (std::is_same_v<T, CantorSchedule>) {
          return v.log_length(v.depth());
        } else if constexpr (std::is_same_v<T, UnionModel>) {
          double f = kNegInf;
          for (const auto& p : v.parts) f = std::max(f, p.log_scale_floor(truncated_sequences));
          return f;
        } else if constexpr (std::is_same_v<T, ProductModel>) {
          return std::max(v.factors[0].log_scale_floor(truncated_sequences),
                          v.factors[1].log_scale_floor(truncated_sequences));
        } else if constexpr (std::is_same_v<T, HolderImageModel>) {
          return v.alpha * v.base[0].log_scale_floor(true);
        } else {
          return kNegInf;
        }
      },
      *node_);
}

Interval SetModel::hull() const {
  return std::visit(
      [](const auto& v) -> Interval {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SequenceSetModel>) {
          return {v.offset, v.offset + 1.0};
        } else if constexpr (std::is_same_v<T, CantorSchedule>) {
          return {v.offset(), v.offset() + 1.0};
        } else if constexpr (std::is_same_v<T, PointSetModel>) {
          return {v.points.front(), v.points.back()};
        } else if constexpr (std::is_same_v<T, DenseGridModel>) {
          return {v.offset, v.offset + 1.0};
        } else if constexpr (std::is_same_v<T, UnionModel>) {
          return {v.parts.front().hull().lo, v.parts.back().hull().hi};
        } else if constexpr (std::is_same_v<T, HolderImageModel>) {
          const Interval b = v.base[0].hull();
          return {v.offset + std::pow(b.lo, v.alpha),
                  v.offset + std::pow(b.hi, v.alpha)};
        } else if constexpr (std::is_same_v<T, CarpetParams>) {
          return {0.0, 1.0};
        } else {
          throw UnsupportedError("product models have no line hull");
        }
      },
      *node_);
}

std::vector<double> SetModel::markers() const {
  if (const auto* c = get_if<CantorSchedule>()) {
    return {c->markers().begin(), c->markers().end()};
  }
  if (const auto* u = get_if<UnionModel>()) {
    std::vector<double> out;
    for (const auto& p : u->parts) {
      const auto m = p.markers();
      out.insert(out.end(), m.begin(), m.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  return {};
}

std::int64_t sequence_truncation(double p, double resolution,
                                 std::int64_t cap) {
  if (!(p > 0.0)) throw InputError("sequence set needs p > 0");
  if (!(resolution > 0.0)) throw InputError("resolution must be positive");
  const double target = std::log(resolution);
  if (log_sequence_gap(p, 1.0) < target) return 1;
  if (log_sequence_gap(p, static_cast<double>(cap)) >= target) {
    throw ResolutionError("sequence set: truncation would exceed the cap of " +
                          std::to_string(cap) + " points");
  }
  std::int64_t lo = 1;
  std::int64_t hi = cap;
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (log_sequence_gap(p, static_cast<double>(mid)) < target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

SequenceSetModel build_sequence_set(double p, double resolution,
                                    std::int64_t cap) {
  if (!(resolution > 0.0 && resolution <= 1.0)) {
    throw InputError("sequence set: resolution must lie in (0, 1]");
  }
  return {p, sequence_truncation(p, resolution, cap), 0.0};
}

SetModel make_union(std::vector<SetModel> parts, double gap) {
  if (parts.empty()) throw InputError("union: no components");
  if (!(gap > 0.0)) throw InputError("union: gap must be positive");
  std::sort(parts.begin(), parts.end(), [](const SetModel& a, const SetModel& b) {
    return a.hull().lo < b.hull().lo;
  });
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i].ambient_dimension() != 1) {
      throw UnsupportedError("union: components must be line models");
    }
    const double g = parts[i].hull().lo - parts[i - 1].hull().hi;
    if (g < gap * (1.0 - 1e-12)) {
      throw InputError("union: components closer than the declared gap");
    }
  }
  return SetModel(UnionModel{std::move(parts), gap});
}

SetModel make_product(SetModel a, SetModel b) {
  if (a.ambient_dimension() != 1 || b.ambient_dimension() != 1) {
    throw UnsupportedError("product: marginals must be line models");
  }
  return SetModel(ProductModel{{std::move(a), std::move(b)}});
}

SetModel make_holder_image(SetModel base, double alpha, double offset) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw InputError("holder image: alpha must lie in (0, 1]");
  }
  if (base.ambient_dimension() != 1) {
    throw UnsupportedError("holder image: base must be a line model");
  }
  const Interval h = base.hull();
  if (h.lo < 0.0 || h.hi > 1.0) {
    throw InputError("holder image: base must lie in [0, 1]");
  }
  return SetModel(HolderImageModel{{std::move(base)}, alpha, offset});
}

SetModel make_single_point(double x) { return SetModel(PointSetModel{{x}}); }

SetModel translate(const SetModel& model, double shift) {
  return std::visit(
      [&](const auto& v) -> SetModel {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SequenceSetModel>) {
          auto c = v;
          c.offset += shift;
          return SetModel(c);
        } else if constexpr (std::is_same_v<T, CantorSchedule>) {
          return SetModel(v.translated(shift));
        } else if constexpr (std::is_same_v<T, PointSetModel>) {
          auto c = v;
          for (double& x : c.points) x += shift;
          return SetModel(c);
        } else if constexpr (std::is_same_v<T, DenseGridModel>) {
          return SetModel(DenseGridModel{v.offset + shift});
        } else if constexpr (std::is_same_v<T, UnionModel>) {
          std::vector<SetModel> parts;
          for (const auto& p : v.parts) parts.push_back(translate(p, shift));
          return SetModel(UnionModel{std::move(parts), v.gap});
        } else if constexpr (std::is_same_v<T, ProductModel>) {
          return SetModel(ProductModel{{translate(v.factors[0], shift),
                                        translate(v.factors[1], shift)}});
        } else if constexpr (std::is_same_v<T, HolderImageModel>) {
          auto c = v;
          c.offset += shift;
          return SetModel(c);
        } else {
          throw UnsupportedError("carpet models cannot be translated");
        }
      },
      model.variant());
}

Skeleton skeleton(const SetModel& model, double log_resolution) {
  const double resolution = std::exp(log_resolution);
  return std::visit(
      [&](const auto& v) -> Skeleton {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SequenceSetModel>) {
          std::int64_t n = v.n_trunc;
          if (resolution > 0.0 &&
              log_sequence_gap(v.p, static_cast<double>(n)) < log_resolution) {
            n = sequence_truncation(v.p, resolution, n);
          }
          Skeleton out;
          out.reserve(static_cast<std::size_t>(n));
          out.push_back({v.offset, v.offset + std::pow(static_cast<double>(n), -v.p)});
          for (std::int64_t k = n - 1; k >= 1; --k) {
            const double x = v.offset + std::pow(static_cast<double>(k), -v.p);
            out.push_back({x, x});
          }
          return out;
        } else if constexpr (std::is_same_v<T, CantorSchedule>) {
          const std::int64_t j = std::max<std::int64_t>(
              0, v.finest_level_at_least(log_resolution));
          return v.materialize(std::min(j, v.depth()));
        } else if constexpr (std::is_same_v<T, PointSetModel>) {
          Skeleton out;
          for (double x : v.points) out.push_back({x, x});
          return out;
        } else if constexpr (std::is_same_v<T, DenseGridModel>) {
          if (!(resolution > 0.0) || 1.0 / resolution > kDenseCap) {
            throw ResolutionError("dense grid: resolution too fine to list");
          }
          const auto n = static_cast<std::int64_t>(std::ceil(1.0 / resolution - 1e-9));
          Skeleton out;
          for (std::int64_t k = 0; k <= n; ++k) {
            const double x = v.offset + std::min(1.0, k * resolution);
            out.push_back({x, x});
          }
          return out;
        } else if constexpr (std::is_same_v<T, UnionModel>) {
          Skeleton out;
          for (const auto& p : v.parts) {
            const Skeleton s = skeleton(p, log_resolution);
            out.insert(out.end(), s.begin(), s.end());
          }
          return out;
        } else if constexpr (std::is_same_v<T, HolderImageModel>) {
          const SetModel& base = v.base[0];
          Skeleton out;
          for (const Interval& it : skeleton(base, log_resolution / v.alpha)) {
            out.push_back({v.offset + std::pow(it.lo, v.alpha),
                           v.offset + std::pow(it.hi, v.alpha)});
          }
          if (base.get_if<SequenceSetModel>()) {
            out = merge_close(std::move(out), resolution);
          }
          return out;
        } else {
          throw UnsupportedError("skeleton is only defined for line models");
        }
      },
      model.variant());
}

SetModel StabilityPair::union_model() const {
  return make_union({SetModel(e), SetModel(f)}, 1.0);
}

StabilityPair build_stability_pair(const ScaleFunction& phi, int levels,
                                   int max_k) {
  if (levels < 1) throw ConfigError("stability pair: levels must be >= 1");
  if (max_k < 1 || max_k > 16) {
    throw ConfigError("stability pair: max_k must lie in [1, 16]");
  }
  const double l3 = std::log(1.0 / 3.0);
  const double l5 = std::log(1.0 / 5.0);
  StabilityScheduleState st;
  st.k.push_back(0);
  st.log_e_marks.push_back(0.0);
  st.log_f_marks.push_back(0.0);
  for (int n = 0; n <= levels; ++n) {
    const int kn = st.k[n];
    const double p0 = static_cast<double>(pow10(kn));
    const double p1 = static_cast<double>(pow10(kn + 1));
    const double p2 = static_cast<double>(pow10(kn + 2));
    const bool even = n % 2 == 0;
    const double sparse_base = even ? st.log_e_marks[n] : st.log_f_marks[n];
    const double dense_base = even ? st.log_f_marks[n] : st.log_e_marks[n];
    const double log_r = sparse_base + (p1 - p0) * l5 + (p2 - p1) * l3;
    st.log_r.push_back(log_r);
    const double rhs = phi.eval_log(log_r);
    int found = -1;
    for (int kk = kn + 1; kk <= max_k; ++kk) {
      const double lhs = (static_cast<double>(pow10(kk)) - p0) * l3 + dense_base;
      if (lhs < rhs) {
        found = kk;
        break;
      }
    }
    if (found < 0) {
      if (n < levels) {
        std::ostringstream os;
        os << "stability pair: no k_" << n + 1 << " <= " << max_k
           << " found; partial k = [";
        for (std::size_t i = 0; i < st.k.size(); ++i) {
          os << (i ? "," : "") << st.k[i];
        }
        os << "]";
        throw ScheduleOverflowError(os.str());
      }
      break;
    }
    const double pk = static_cast<double>(pow10(found));
    const double sparse_new = sparse_base + (p1 - p0) * l5 + (pk - p1) * l3;
    const double dense_new = dense_base + (pk - p0) * l3;
    if (n == levels) {
      st.k_next = found;
      break;
    }
    st.k.push_back(found);
    st.log_e_marks.push_back(even ? sparse_new : dense_new);
    st.log_f_marks.push_back(even ? dense_new : sparse_new);
  }
  const int k_top = st.k_next >= 0 ? st.k_next + 1 : max_k + 1;
  const std::int64_t depth = pow10(std::min(k_top, 17)) - 1;
  std::vector<int> all_k = st.k;
  if (st.k_next >= 0) all_k.push_back(st.k_next);
  std::vector<std::pair<std::int64_t, std::int64_t>> sparse_e;
  std::vector<std::pair<std::int64_t, std::int64_t>> sparse_f;
  for (std::size_t n = 0; n < all_k.size(); ++n) {
    auto range = std::make_pair(pow10(all_k[n]), pow10(all_k[n] + 1));
    (n % 2 == 0 ? sparse_e : sparse_f).push_back(range);
  }
  CantorSchedule e(runs_from_sparse(sparse_e, depth), 0.0);
  CantorSchedule f(runs_from_sparse(sparse_f, depth), 2.0);
  auto sparse_marks = [](const CantorSchedule& s,
                         const std::vector<std::pair<std::int64_t, std::int64_t>>& sp) {
    std::vector<double> m;
    for (auto [a, b] : sp) {
      if (b - 1 <= s.depth()) m.push_back(s.log_length(b - 1));
    }
    return m;
  };
  std::vector<double> me = sparse_marks(e, sparse_e);
  std::vector<double> mf = sparse_marks(f, sparse_f);
  me.insert(me.end(), st.log_r.begin(), st.log_r.end());
  mf.insert(mf.end(), st.log_r.begin(), st.log_r.end());
  e.set_markers(std::move(me));
  f.set_markers(std::move(mf));
  return {std::move(e), std::move(f), std::move(st)};
}

void validate(const CarpetParams& c) {
  if (c.m < 2 || c.n < c.m) throw InputError("carpet: need 2 <= m <= n");
  if (c.column_counts.empty() ||
      static_cast<int>(c.column_counts.size()) > c.m) {
    throw InputError("carpet: need 1 <= M <= m nonempty columns");
  }
  for (int nj : c.column_counts) {
    if (nj < 1 || nj > c.n) throw InputError("carpet: need 1 <= N_j <= n");
  }
}

CarpetDimensions carpet_dimensions(const CarpetParams& c) {
  validate(c);
  const double lm = std::log(static_cast<double>(c.m));
  const double ln = std::log(static_cast<double>(c.n));
  const double big_m = c.nonempty_columns();
  const double big_n = c.total();
  const double ratio = lm / ln;
  double sum = 0.0;
  int max_nj = 0;
  for (int nj : c.column_counts) {
    sum += std::pow(static_cast<double>(nj), ratio);
    max_nj = std::max(max_nj, nj);
  }
  CarpetDimensions d;
  d.hausdorff = std::log(sum) / lm;
  d.box = std::log(big_m) / lm + std::log(big_n / big_m) / ln;
  d.assouad = std::log(big_m) / lm + std::log(static_cast<double>(max_nj)) / ln;
  return d;
}

}  // namespace phidim
