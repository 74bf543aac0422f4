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

#ifndef PHIDIM_GRID_HPP_
#define PHIDIM_GRID_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace phidim {

// A finite set of scales delta, held as natural logs and ordered from the
// coarsest scale to the finest.
class DeltaGrid {
 public:
  DeltaGrid() = default;
  DeltaGrid(std::vector<double> log_deltas, std::string spec);

  // Points evenly spaced in log2(delta) from log2_max down to log2_min.
  static DeltaGrid linear_log2(double log2_min, double log2_max, int points);
  // Points evenly spaced in log|log delta|, for grids spanning many decades
  // of log delta.
  static DeltaGrid iterated_log(double log2_min, double log2_max, int points);
  // Parses "a:b:n" (linear in log2 delta) or "a:b:n:log".
  static DeltaGrid parse(std::string_view text);

  // Adds the given scales (natural logs) that fall inside the grid range.
  DeltaGrid with_scales(std::span<const double> extra_log_deltas) const;
  // Keeps the finest points, dropping the coarse ones.
  DeltaGrid finest(std::size_t count) const;

  std::span<const double> log_deltas() const { return log_deltas_; }
  std::size_t size() const { return log_deltas_.size(); }
  bool empty() const { return log_deltas_.empty(); }
  double operator[](std::size_t i) const { return log_deltas_[i]; }
  const std::string& spec() const { return spec_; }

 private:
  std::vector<double> log_deltas_;
  std::string spec_;
};

}  // namespace phidim

#endif  // PHIDIM_GRID_HPP_
