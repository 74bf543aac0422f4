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

#include "phidim/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>

#include "phidim/error.hpp"
#include "phidim/log_math.hpp"

namespace phidim {
namespace {

void sort_coarse_to_fine(std::vector<double>& v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

double parse_number(std::string_view s) {
  double value = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError("grid: cannot parse number '" + std::string(s) + "'");
  }
  return value;
}

void check_range(double log2_min, double log2_max, int points) {
  if (!(log2_min < log2_max)) {
    throw ConfigError("grid: bounds must satisfy min < max");
  }
  if (log2_max >= 0.0) throw ConfigError("grid: scales must be below 1");
  if (points < 2) throw ConfigError("grid: need at least 2 points");
}

}  // namespace

DeltaGrid::DeltaGrid(std::vector<double> log_deltas, std::string spec)
    : log_deltas_(std::move(log_deltas)), spec_(std::move(spec)) {
  for (double x : log_deltas_) {
    if (!std::isfinite(x) || x >= 0.0) {
      throw ConfigError("grid: scales must be finite and below 1");
    }
  }
  sort_coarse_to_fine(log_deltas_);
}

DeltaGrid DeltaGrid::linear_log2(double log2_min, double log2_max,
                                 int points) {
  check_range(log2_min, log2_max, points);
  std::vector<double> v;
  v.reserve(points);
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    v.push_back((log2_max + t * (log2_min - log2_max)) * kLog2);
  }
  return DeltaGrid(std::move(v), format_double(log2_min) + ":" +
                                     format_double(log2_max) + ":" +
                                     std::to_string(points));
}

DeltaGrid DeltaGrid::iterated_log(double log2_min, double log2_max,
                                  int points) {
  check_range(log2_min, log2_max, points);
  const double a = std::log(-log2_max);
  const double b = std::log(-log2_min);
  std::vector<double> v;
  v.reserve(points);
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    v.push_back(-std::exp(a + t * (b - a)) * kLog2);
  }
  return DeltaGrid(std::move(v), format_double(log2_min) + ":" +
                                     format_double(log2_max) + ":" +
                                     std::to_string(points) + ":log");
}

DeltaGrid DeltaGrid::parse(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(':', start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (parts.size() != 3 && parts.size() != 4) {
    throw ConfigError("grid: expected a:b:n or a:b:n:log");
  }
  double a = parse_number(parts[0]);
  double b = parse_number(parts[1]);
  const double n = parse_number(parts[2]);
  if (n != std::floor(n) || n < 2 || n > 1e6) {
    throw ConfigError("grid: point count must be an integer >= 2");
  }
  if (a > b) std::swap(a, b);
  if (parts.size() == 4) {
    if (parts[3] != "log") throw ConfigError("grid: unknown spacing suffix");
    return iterated_log(a, b, static_cast<int>(n));
  }
  return linear_log2(a, b, static_cast<int>(n));
}

DeltaGrid DeltaGrid::with_scales(std::span<const double> extra) const {
  if (log_deltas_.empty()) return *this;
  const double coarse = log_deltas_.front();
  const double fine = log_deltas_.back();
  std::vector<double> v = log_deltas_;
  bool added = false;
  for (double x : extra) {
    if (x <= coarse && x >= fine) {
      v.push_back(x);
      added = true;
    }
  }
  if (!added) return *this;
  return DeltaGrid(std::move(v), spec_ + "+scales");
}

DeltaGrid DeltaGrid::finest(std::size_t count) const {
  if (count >= log_deltas_.size()) return *this;
  std::vector<double> v(log_deltas_.end() - static_cast<long>(count),
                        log_deltas_.end());
  return DeltaGrid(std::move(v), spec_ + "[finest " + std::to_string(count) +
                                     "]");
}

}  // namespace phidim
