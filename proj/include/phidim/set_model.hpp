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

#ifndef PHIDIM_SET_MODEL_HPP_
#define PHIDIM_SET_MODEL_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "phidim/cantor_schedule.hpp"
#include "phidim/interval.hpp"
#include "phidim/scale_function.hpp"

namespace phidim {

// {0} and the points n^-p for n < n_trunc, with [0, n_trunc^-p] kept as a
// single cluster interval.
struct SequenceSetModel {
  double p = 1.0;
  std::int64_t n_trunc = 1;
  double offset = 0.0;

  // Gap n^-p - (n+1)^-p below which points are clustered.
  double log_scale_floor() const;
};

// An explicit finite set of points.
struct PointSetModel {
  std::vector<double> points;
};

// A uniform grid on [offset, offset + 1] whose spacing is the resolution
// at which it is viewed.
struct DenseGridModel {
  double offset = 0.0;
};

// Bedford-McMullen carpet parameters. Column widths 1/m, row heights 1/n.
struct CarpetParams {
  int m = 2;
  int n = 2;
  std::vector<int> column_counts;

  int nonempty_columns() const { return static_cast<int>(column_counts.size()); }
  int total() const;
};

class SetModel;

struct UnionModel {
  std::vector<SetModel> parts;
  double gap = 1.0;
};

struct ProductModel {
  std::vector<SetModel> factors;
};

// Image of base under x -> x^alpha, then shifted by offset.
struct HolderImageModel {
  std::vector<SetModel> base;
  double alpha = 1.0;
  double offset = 0.0;
};

class SetModel {
 public:
  using Variant = std::variant<SequenceSetModel, CantorSchedule, PointSetModel,
                               DenseGridModel, UnionModel, ProductModel,
                               HolderImageModel, CarpetParams>;

  SetModel(Variant v);  // NOLINT: implicit by design

  const Variant& variant() const { return *node_; }
  template <class T>
  const T* get_if() const {
    return std::get_if<T>(node_.get());
  }

  std::string kind() const;
  std::string id() const;
  int ambient_dimension() const;
  // Smallest resolution the model resolves, as a natural log. Sequence sets
  // only have one when covered through their truncated skeleton.
  double log_scale_floor(bool truncated_sequences = false) const;
  // Extent [min, max] of the set on the line.
  Interval hull() const;
  // Characteristic scales to inject into delta grids.
  std::vector<double> markers() const;

 private:
  std::shared_ptr<const Variant> node_;
};

SequenceSetModel build_sequence_set(double p, double resolution,
                                    std::int64_t cap = 10'000'000);
// log(n^-p - (n+1)^-p) for real n > 0.
double log_sequence_gap(double p, double n);
// Smallest N with n^-p - (n+1)^-p < resolution for all n >= N.
std::int64_t sequence_truncation(double p, double resolution,
                                 std::int64_t cap = 10'000'000);

SetModel make_union(std::vector<SetModel> parts, double gap);
SetModel make_product(SetModel a, SetModel b);
SetModel make_holder_image(SetModel base, double alpha, double offset = 0.0);
SetModel make_single_point(double x = 0.0);

SetModel translate(const SetModel& model, double shift);

// Minimal sorted list of disjoint closed intervals covering the model at the
// given resolution (a natural log).
Skeleton skeleton(const SetModel& model, double log_resolution);

struct StabilityScheduleState {
  std::vector<int> k;
  std::vector<double> log_e_marks;
  std::vector<double> log_f_marks;
  std::vector<double> log_r;
  // Index k_{levels+1} when it fits under the depth cap, else -1.
  int k_next = -1;
};

struct StabilityPair {
  CantorSchedule e;
  CantorSchedule f;
  StabilityScheduleState state;

  SetModel union_model() const;
};

// Two Cantor schedules whose lower dimensions are small but whose union is
// large, for the scale function phi.
StabilityPair build_stability_pair(const ScaleFunction& phi, int levels,
                                   int max_k = 16);

struct CarpetDimensions {
  double hausdorff = 0.0;
  double box = 0.0;
  double assouad = 0.0;
};

CarpetDimensions carpet_dimensions(const CarpetParams& c);
void validate(const CarpetParams& c);

}  // namespace phidim

#endif  // PHIDIM_SET_MODEL_HPP_
