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

#ifndef PHIDIM_CANTOR_SCHEDULE_HPP_
#define PHIDIM_CANTOR_SCHEDULE_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "phidim/interval.hpp"

namespace phidim {

struct RatioRun {
  std::int64_t count = 0;
  double ratio = 1.0 / 3.0;
};

// A generalized Cantor set built from [offset, offset + 1] by keeping the two
// outer subintervals of relative length r_j at each level j >= 1. Level j has
// 2^j intervals of length e_j = r_1 * ... * r_j. Ratios are stored as runs so
// that depths far beyond any materializable level remain cheap; every length
// is a natural log.
class CantorSchedule {
 public:
  CantorSchedule(std::vector<RatioRun> runs, double offset = 0.0);

  static CantorSchedule uniform(double ratio, std::int64_t depth,
                                double offset = 0.0);

  std::int64_t depth() const { return depth_; }
  double offset() const { return offset_; }
  std::span<const RatioRun> runs() const { return runs_; }

  // Level indices where one run ends and the next begins, plus 0 and depth.
  std::span<const std::int64_t> boundaries() const { return bounds_; }

  double ratio_at(std::int64_t level) const;
  double log_length(std::int64_t level) const;
  // Sibling gap created at this level; +inf at level 0.
  double log_gap(std::int64_t level) const;
  double log_count(std::int64_t level) const;

  // max{j : log e_j >= log_len}, or -1 when even e_0 is shorter.
  std::int64_t finest_level_at_least(double log_len) const;
  // max{j : log e_j > log_len}, or -1.
  std::int64_t finest_level_above(double log_len) const;
  // min{j : log e_j <= log_len}, or depth + 1.
  std::int64_t coarsest_level_at_most(double log_len) const;
  // max{j in [0, cap] : log g_j > log_d}.
  std::int64_t last_level_gap_above(double log_d, std::int64_t cap) const;

  // The 2^level intervals of one level, left to right.
  std::vector<Interval> materialize(std::int64_t level) const;

  CantorSchedule translated(double shift) const;

  // Characteristic scales (natural logs) worth sampling in a delta grid.
  std::span<const double> markers() const { return markers_; }
  void set_markers(std::vector<double> m) { markers_ = std::move(m); }

 private:
  std::size_t run_of(std::int64_t level) const;

  std::vector<RatioRun> runs_;
  std::vector<std::int64_t> bounds_;
  std::vector<double> log_prefix_;
  std::vector<double> log_ratio_;
  std::vector<double> markers_;
  std::int64_t depth_ = 0;
  double offset_ = 0.0;
};

}  // namespace phidim

#endif  // PHIDIM_CANTOR_SCHEDULE_HPP_
