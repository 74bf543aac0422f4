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

#include "phidim/cantor_schedule.hpp"

#include <algorithm>
#include <cmath>

#include "phidim/error.hpp"
#include "phidim/log_math.hpp"

namespace phidim {
namespace {

constexpr std::int64_t kMaterializeCap = 20;

double tol_for(double x) { return 1e-12 * std::max(1.0, std::abs(x)); }

}  // namespace

CantorSchedule::CantorSchedule(std::vector<RatioRun> runs, double offset)
    : offset_(offset) {
  bounds_.push_back(0);
  log_prefix_.push_back(0.0);
  for (const RatioRun& r : runs) {
    if (r.count < 0) throw InputError("cantor: negative run length");
    if (!(r.ratio > 0.0 && r.ratio <= 1.0 / 3.0 + 1e-15)) {
      throw InputError("cantor: ratios must lie in (0, 1/3]");
    }
    if (r.count == 0) continue;
    if (!runs_.empty() && runs_.back().ratio == r.ratio) {
      runs_.back().count += r.count;
      bounds_.back() += r.count;
      log_prefix_.back() += static_cast<double>(r.count) * std::log(r.ratio);
      continue;
    }
    runs_.push_back(r);
    log_ratio_.push_back(std::log(r.ratio));
    bounds_.push_back(bounds_.back() + r.count);
    log_prefix_.push_back(log_prefix_.back() +
                          static_cast<double>(r.count) * log_ratio_.back());
  }
  depth_ = bounds_.back();
}

CantorSchedule CantorSchedule::uniform(double ratio, std::int64_t depth,
                                       double offset) {
  return CantorSchedule({RatioRun{depth, ratio}}, offset);
}

std::size_t CantorSchedule::run_of(std::int64_t level) const {
  auto it = std::upper_bound(bounds_.begin(), bounds_.end(), level - 1);
  return static_cast<std::size_t>(it - bounds_.begin()) - 1;
}

double CantorSchedule::ratio_at(std::int64_t level) const {
  if (level < 1 || level > depth_) throw InputError("cantor: level out of range");
  return runs_[run_of(level)].ratio;
}

double CantorSchedule::log_length(std::int64_t level) const {
  if (level < 0 || level > depth_) {
    throw InputError("cantor: level out of range");
  }
  if (level == 0) return 0.0;
  const std::size_t k = run_of(level);
  return log_prefix_[k] + static_cast<double>(level - bounds_[k]) * log_ratio_[k];
}

double CantorSchedule::log_gap(std::int64_t level) const {
  if (level == 0) return kPosInf;
  return log_length(level - 1) + std::log1p(-2.0 * ratio_at(level));
}

double CantorSchedule::log_count(std::int64_t level) const {
  return static_cast<double>(level) * kLog2;
}

std::int64_t CantorSchedule::finest_level_at_least(double log_len) const {
  const double target = log_len - tol_for(log_len);
  if (0.0 < target) return -1;
  for (std::size_t k = 0; k < runs_.size(); ++k) {
    if (log_prefix_[k + 1] >= target) continue;
    const double steps = (target - log_prefix_[k]) / log_ratio_[k];
    std::int64_t j = bounds_[k] + static_cast<std::int64_t>(std::floor(steps));
    j = std::clamp(j, bounds_[k], bounds_[k + 1]);
    while (j < bounds_[k + 1] && log_length(j + 1) >= target) ++j;
    while (j > bounds_[k] && log_length(j) < target) --j;
    return j;
  }
  return depth_;
}

std::int64_t CantorSchedule::finest_level_above(double log_len) const {
  const double target = log_len + tol_for(log_len);
  if (0.0 <= target) return -1;
  for (std::size_t k = 0; k < runs_.size(); ++k) {
    if (log_prefix_[k + 1] > target) continue;
    const double steps = (target - log_prefix_[k]) / log_ratio_[k];
    std::int64_t j = bounds_[k] + static_cast<std::int64_t>(std::floor(steps));
    j = std::clamp(j, bounds_[k], bounds_[k + 1]);
    while (j < bounds_[k + 1] && log_length(j + 1) > target) ++j;
    while (j > bounds_[k] && log_length(j) <= target) --j;
    return j;
  }
  return depth_;
}

std::int64_t CantorSchedule::coarsest_level_at_most(double log_len) const {
  return finest_level_above(log_len) + 1;
}

std::int64_t CantorSchedule::last_level_gap_above(double log_d,
                                                  std::int64_t cap) const {
  cap = std::min(cap, depth_);
  const double target = log_d + tol_for(log_d);
  std::int64_t lo = 0;
  std::int64_t hi = cap;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo + 1) / 2;
    if (log_gap(mid) > target) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

std::vector<Interval> CantorSchedule::materialize(std::int64_t level) const {
  if (level < 0 || level > depth_) {
    throw ResolutionError("cantor: level beyond schedule depth");
  }
  if (level > kMaterializeCap) {
    throw ResolutionError("cantor: level " + std::to_string(level) +
                          " exceeds the materialization cap of 2^20 intervals");
  }
  std::vector<double> starts{offset_};
  for (std::int64_t i = 1; i <= level; ++i) {
    const double prev = std::exp(log_length(i - 1));
    const double len = std::exp(log_length(i));
    std::vector<double> next;
    next.reserve(starts.size() * 2);
    for (double s : starts) {
      next.push_back(s);
      next.push_back(s + prev - len);
    }
    starts = std::move(next);
  }
  const double len = std::exp(log_length(level));
  std::vector<Interval> out;
  out.reserve(starts.size());
  for (double s : starts) out.push_back({s, s + len});
  return out;
}

CantorSchedule CantorSchedule::translated(double shift) const {
  CantorSchedule copy = *this;
  copy.offset_ += shift;
  return copy;
}

}  // namespace phidim
