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

#include "phidim/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "phidim/error.hpp"
#include "phidim/log_math.hpp"

namespace phidim {
namespace {

Json num(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

double get_num(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ConfigError(std::string("missing numeric field '") + key + "'");
  }
  return j.at(key).get<double>();
}

double get_num(const Json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  return get_num(j, key);
}

std::int64_t get_int(const Json& j, const char* key, std::int64_t fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) {
    throw ConfigError(std::string("field '") + key + "' must be an integer");
  }
  return j.at(key).get<std::int64_t>();
}

const Json& get_obj(const Json& j, const char* key) {
  if (!j.contains(key)) {
    throw ConfigError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

Json table_json(const Tabulated& t) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < t.log_delta.size(); ++i) {
    arr.push_back({t.log_delta[i], t.log_phi[i]});
  }
  return arr;
}

std::vector<std::pair<double, double>> read_breakpoints(const Json& params) {
  std::vector<std::pair<double, double>> pts;
  if (params.contains("log_breakpoints")) {
    for (const Json& p : params.at("log_breakpoints")) {
      pts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    }
  } else if (params.contains("breakpoints")) {
    for (const Json& p : params.at("breakpoints")) {
      const double d = p.at(0).get<double>();
      const double v = p.at(1).get<double>();
      if (!(d > 0.0) || !(v > 0.0)) {
        throw ConfigError("breakpoints must be positive");
      }
      pts.emplace_back(std::log(d), std::log(v));
    }
  } else {
    throw ConfigError("tabulated function needs breakpoints");
  }
  return pts;
}

Json schedule_json(const CantorSchedule& c) {
  Json runs = Json::array();
  for (const RatioRun& r : c.runs()) runs.push_back({r.count, r.ratio});
  Json j{{"kind", "cantor"}, {"runs", runs}, {"offset", c.offset()}};
  if (!c.markers().empty()) {
    j["log_markers"] = std::vector<double>(c.markers().begin(), c.markers().end());
  }
  return j;
}

CantorSchedule schedule_from_json(const Json& j) {
  const double offset = get_num(j, "offset", 0.0);
  std::optional<CantorSchedule> c;
  if (j.contains("runs")) {
    std::vector<RatioRun> runs;
    for (const Json& r : j.at("runs")) {
      runs.push_back({r.at(0).get<std::int64_t>(), r.at(1).get<double>()});
    }
    c.emplace(std::move(runs), offset);
  } else {
    c.emplace(CantorSchedule::uniform(get_num(j, "ratio", 1.0 / 3.0),
                                      get_int(j, "depth", 40), offset));
  }
  if (j.contains("log_markers")) {
    c->set_markers(j.at("log_markers").get<std::vector<double>>());
  }
  return *c;
}

}  // namespace

Json to_json(const ScaleFunction& phi) {
  Json params = Json::object();
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PowerLaw>) {
          params["theta"] = v.theta;
        } else if constexpr (std::is_same_v<T, StretchedExp>) {
          params["c"] = v.c;
        } else if constexpr (std::is_same_v<T, Tabulated>) {
          params["log_breakpoints"] = table_json(v);
        } else if constexpr (std::is_same_v<T, MinFamily>) {
          Json members = Json::array();
          Json act = Json::array();
          for (std::size_t i = 0; i < v.members.size(); ++i) {
            members.push_back(to_json(v.members[i]));
            act.push_back(num(v.log_activation[i]));
          }
          params["members"] = members;
          params["log_activation"] = act;
        } else if constexpr (std::is_same_v<T, PhiSFunction>) {
          params["s"] = v.s;
          params["model_id"] = v.model_id;
          params["log_breakpoints"] = table_json(v.table);
        }
      },
      phi.variant());
  return Json{{"variant", std::string(phi.variant_name())},
              {"params", params},
              {"domain_upper", num(std::exp(phi.log_domain_upper()))}};
}

ScaleFunction scale_function_from_json(const Json& j) {
  if (j.is_string()) return parse_scale_function(j.get<std::string>());
  if (!j.is_object()) throw ConfigError("scale function must be an object");
  const std::string variant = get_obj(j, "variant").get<std::string>();
  const Json params = j.value("params", Json::object());
  std::optional<ScaleFunction> f;
  if (variant == "power_law") {
    f = ScaleFunction::power_law(get_num(params, "theta"));
  } else if (variant == "log_corrected") {
    f = ScaleFunction::log_corrected();
  } else if (variant == "stretched_exp") {
    f = ScaleFunction::stretched_exp(get_num(params, "c"));
  } else if (variant == "tabulated") {
    f = ScaleFunction::tabulated(read_breakpoints(params));
  } else if (variant == "min_family") {
    std::vector<ScaleFunction> members;
    std::vector<double> act;
    for (const Json& m : get_obj(params, "members")) {
      members.push_back(scale_function_from_json(m));
    }
    for (const Json& a : get_obj(params, "log_activation")) {
      act.push_back(a.is_null() ? kPosInf : a.get<double>());
    }
    f = ScaleFunction::min_family(std::move(members), std::move(act));
  } else if (variant == "phi_s") {
    Tabulated t;
    auto pts = read_breakpoints(params);
    std::sort(pts.begin(), pts.end());
    for (const auto& [d, v] : pts) {
      t.log_delta.push_back(d);
      t.log_phi.push_back(v);
    }
    f = ScaleFunction::phi_s(get_num(params, "s"), std::move(t),
                             params.value("model_id", std::string()));
  } else {
    throw ConfigError("unknown scale function variant '" + variant + "'");
  }
  if (j.contains("domain_upper") && j.at("domain_upper").is_number()) {
    const double y = j.at("domain_upper").get<double>();
    if (!(y > 0.0)) throw ConfigError("domain_upper must be positive");
    if (std::log(y) < f->log_domain_upper()) {
      f = f->with_domain_upper(std::log(y));
    }
  }
  return *f;
}

ScaleFunction parse_scale_function(std::string_view text) {
  const std::string s(text);
  if (!s.empty() && s.front() == '{') {
    Json j;
    try {
      j = Json::parse(s);
    } catch (const Json::exception& e) {
      throw ConfigError(std::string("invalid scale function JSON: ") + e.what());
    }
    return scale_function_from_json(j);
  }
  const auto colon = s.find(':');
  const std::string name = s.substr(0, colon);
  double arg = 0.0;
  if (colon != std::string::npos) {
    try {
      std::size_t used = 0;
      arg = std::stod(s.substr(colon + 1), &used);
      if (used != s.size() - colon - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ConfigError("invalid scale function parameter in '" + s + "'");
    }
  }
  const bool has_arg = colon != std::string::npos;
  if ((name == "power" || name == "power_law") && has_arg) {
    return ScaleFunction::power_law(arg);
  }
  if ((name == "log" || name == "log_corrected") && !has_arg) {
    return ScaleFunction::log_corrected();
  }
  if ((name == "stretched" || name == "stretched_exp") && has_arg) {
    return ScaleFunction::stretched_exp(arg);
  }
  throw ConfigError("unknown scale function spec '" + s + "'");
}

Json to_json(const SetModel& model) {
  return std::visit(
      [&](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SequenceSetModel>) {
          return {{"kind", "sequence"}, {"p", v.p}, {"n_trunc", v.n_trunc},
                  {"offset", v.offset}};
        } else if constexpr (std::is_same_v<T, CantorSchedule>) {
          return schedule_json(v);
        } else if constexpr (std::is_same_v<T, PointSetModel>) {
          return {{"kind", "points"}, {"points", v.points}};
        } else if constexpr (std::is_same_v<T, DenseGridModel>) {
          return {{"kind", "dense"}, {"offset", v.offset}};
        } else if constexpr (std::is_same_v<T, UnionModel>) {
          Json parts = Json::array();
          for (const SetModel& p : v.parts) parts.push_back(to_json(p));
          return {{"kind", "union"}, {"parts", parts}, {"gap", v.gap}};
        } else if constexpr (std::is_same_v<T, ProductModel>) {
          return {{"kind", "product"},
                  {"factors", {to_json(v.factors[0]), to_json(v.factors[1])}}};
        } else if constexpr (std::is_same_v<T, HolderImageModel>) {
          return {{"kind", "holder"}, {"base", to_json(v.base[0])},
                  {"alpha", v.alpha}, {"offset", v.offset}};
        } else {
          return {{"kind", "carpet"}, {"m", v.m}, {"n", v.n},
                  {"column_counts", v.column_counts}};
        }
      },
      model.variant());
}

SetModel set_model_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("model must be a JSON object");
  const std::string kind = get_obj(j, "kind").get<std::string>();
  if (kind == "sequence") {
    SequenceSetModel m;
    m.p = get_num(j, "p");
    m.n_trunc = get_int(j, "n_trunc", 10'000'000);
    m.offset = get_num(j, "offset", 0.0);
    if (!(m.p > 0.0) || m.n_trunc < 1) {
      throw ConfigError("sequence model needs p > 0 and n_trunc >= 1");
    }
    return SetModel(m);
  }
  if (kind == "cantor") return SetModel(schedule_from_json(j));
  if (kind == "points") {
    auto pts = get_obj(j, "points").get<std::vector<double>>();
    if (pts.empty()) throw ConfigError("point set must be nonempty");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return SetModel(PointSetModel{std::move(pts)});
  }
  if (kind == "dense") return SetModel(DenseGridModel{get_num(j, "offset", 0.0)});
  if (kind == "union") {
    std::vector<SetModel> parts;
    for (const Json& p : get_obj(j, "parts")) parts.push_back(set_model_from_json(p));
    return make_union(std::move(parts), get_num(j, "gap", 1.0));
  }
  if (kind == "product") {
    const Json& f = get_obj(j, "factors");
    if (!f.is_array() || f.size() != 2) {
      throw ConfigError("product model needs exactly two factors");
    }
    return make_product(set_model_from_json(f[0]), set_model_from_json(f[1]));
  }
  if (kind == "holder") {
    return make_holder_image(set_model_from_json(get_obj(j, "base")),
                             get_num(j, "alpha"), get_num(j, "offset", 0.0));
  }
  if (kind == "carpet") {
    CarpetParams c;
    c.m = static_cast<int>(get_int(j, "m", 2));
    c.n = static_cast<int>(get_int(j, "n", 100));
    c.column_counts = j.value("column_counts", std::vector<int>{1, 100});
    validate(c);
    return SetModel(c);
  }
  if (kind == "stability") {
    const ScaleFunction phi =
        scale_function_from_json(j.value("phi", Json("power:0.5")));
    const StabilityPair sp = build_stability_pair(
        phi, static_cast<int>(get_int(j, "levels", 3)),
        static_cast<int>(get_int(j, "max_k", 16)));
    const std::string comp = j.value("component", std::string("union"));
    if (comp == "e") return SetModel(sp.e);
    if (comp == "f") return SetModel(sp.f);
    if (comp == "union") return sp.union_model();
    throw ConfigError("stability component must be e, f or union");
  }
  throw ConfigError("unknown model kind '" + kind + "'");
}

Json to_json(const CoverCost& c) {
  Json j{{"log_lower", num(c.log_lower)},
         {"log_upper", num(c.log_upper)},
         {"method", std::string(to_string(c.method))}};
  if (c.pieces) {
    Json arr = Json::array();
    for (const Interval& it : *c.pieces) arr.push_back({it.lo, it.hi});
    j["pieces"] = arr;
  }
  return j;
}

Json to_json(const DimensionProfile& p) {
  Json rows = Json::array();
  for (const ProfileRow& r : p.rows) {
    rows.push_back({{"log2_delta", r.log_delta / kLog2},
                    {"s_lower", r.s_lower},
                    {"s_upper", r.s_upper}});
  }
  const Extrapolation& e = p.extrapolation;
  return {{"model", p.model_id},
          {"phi", p.phi},
          {"grid", p.grid_spec},
          {"tol", p.tol},
          {"rows", rows},
          {"extrapolation",
           {{"method", e.method},
            {"upper", {e.upper_lower, e.upper_upper}},
            {"lower", {e.lower_lower, e.lower_upper}}}}};
}

Json to_json(const AtomicMeasure& mu) {
  Json atoms = Json::array();
  for (const Atom& a : mu.atoms) atoms.push_back({a.location, a.mass});
  return {{"base", mu.base},
          {"m", mu.m},
          {"l", mu.l},
          {"s", mu.s},
          {"log_prenormalization_total", num(mu.log_prenormalization_total)},
          {"atoms", atoms}};
}

Json to_json(const BallMassReport& r) {
  return {{"c_observed", num(r.c_observed())},
          {"log_c_observed", num(r.log_c_observed)},
          {"witness", {{"center", r.center}, {"radius", r.radius}, {"mass", r.mass}}}};
}

Json to_json(const RoundtripReport& r) {
  Json rows = Json::array();
  for (const RoundtripRow& row : r.rows) {
    Json lc = Json::array();
    for (double x : row.log_c) lc.push_back(num(x));
    rows.push_back({{"s", row.s}, {"slope", row.slope}, {"log_c", lc}});
  }
  Json l2 = Json::array();
  for (double ld : r.log_deltas) l2.push_back(ld / kLog2);
  return {{"grid", r.grid_spec},
          {"log2_deltas", l2},
          {"rows", rows},
          {"measure_estimate", r.measure_estimate},
          {"cover_bracket", {r.cover_lower, r.cover_upper}},
          {"distance", r.distance}};
}

Json to_json(const PhiSTable& t) {
  Json rows = Json::array();
  for (const PhiSRow& r : t.rows) rows.push_back({r.log_delta, r.log_phi});
  Json dropped = Json::array();
  for (double d : t.dropped_log_deltas) dropped.push_back(d);
  return {{"s", t.s},
          {"budget", t.budget},
          {"model", t.model_id},
          {"grid", t.grid_spec},
          {"log_rows", rows},
          {"dropped_log_deltas", dropped},
          {"diagnostics", t.diagnostics}};
}

ScaleFunction phi_s_from_json(const Json& j) {
  PhiSTable t;
  t.s = get_num(j, "s");
  t.model_id = j.value("model", std::string());
  for (const Json& r : get_obj(j, "log_rows")) {
    t.rows.push_back({r.at(0).get<double>(), r.at(1).get<double>()});
  }
  return t.as_function();
}

Json to_json(const InterpolationReport& r) {
  Json rows = Json::array();
  for (const InterpolationRow& row : r.rows) {
    rows.push_back({{"s", row.s},
                    {"rows_used", row.rows_used},
                    {"upper", {row.estimate.upper_lower, row.estimate.upper_upper}},
                    {"lower", {row.estimate.lower_lower, row.estimate.lower_upper}},
                    {"upper_pass", row.upper_pass},
                    {"lower_pass", row.lower_pass}});
  }
  return {{"grid", r.grid_spec},
          {"box_lower", r.box_lower},
          {"box_upper", r.box_upper},
          {"slack", r.slack},
          {"rows", rows},
          {"monotone_upper", r.monotone_upper},
          {"tables_ordered", r.tables_ordered},
          {"all_pass", r.all_pass}};
}

Json to_json(const ComparisonReport& r) {
  Json j{{"satisfied", r.satisfied},
         {"label", r.label},
         {"points_checked", r.points_checked},
         {"grid", r.grid_spec}};
  if (r.witness) {
    j["witness"] = {{"alpha", r.witness->alpha},
                    {"log2_delta", r.witness->log_delta / kLog2},
                    {"lhs", num(r.witness->lhs)},
                    {"rhs", num(r.witness->rhs)}};
  }
  return j;
}

std::string profile_csv(const DimensionProfile& p) {
  std::ostringstream os;
  os << "log2_delta,s_lower,s_upper\n";
  for (const ProfileRow& r : p.rows) {
    os << format_double(r.log_delta / kLog2) << ',' << format_double(r.s_lower)
       << ',' << format_double(r.s_upper) << '\n';
  }
  return os.str();
}

std::string measure_csv(const AtomicMeasure& mu) {
  std::ostringstream os;
  os << "location,mass\n";
  for (const Atom& a : mu.atoms) {
    os << format_double(a.location) << ',' << format_double(a.mass) << '\n';
  }
  return os.str();
}

std::string phi_s_csv(const PhiSTable& t) {
  std::ostringstream os;
  os << "log2_delta,log2_phi_s\n";
  for (const PhiSRow& r : t.rows) {
    os << format_double(r.log_delta / kLog2) << ','
       << format_double(r.log_phi / kLog2) << '\n';
  }
  return os.str();
}

}  // namespace phidim
