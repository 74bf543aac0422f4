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

#include "phidim/cli.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "phidim/bounds.hpp"
#include "phidim/error.hpp"
#include "phidim/estimator.hpp"
#include "phidim/interpolation.hpp"
#include "phidim/log_math.hpp"
#include "phidim/measures.hpp"

namespace phidim {
namespace {

constexpr const char* kCommands[] = {"estimate", "bounds",      "phi",   "frostman",
                                     "interpolate", "carpet", "verify"};
constexpr double kExternalCarpetBound = 0.352;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ConfigError("invalid JSON in '" + path + "': " + e.what());
  }
}

Json parse_inline_or_file(const std::string& text) {
  if (!text.empty() && text.front() == '{') {
    try {
      return Json::parse(text);
    } catch (const Json::exception& e) {
      throw ConfigError(std::string("invalid inline JSON: ") + e.what());
    }
  }
  return read_json_file(text);
}

std::vector<double> parse_s_grid(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ConfigError("invalid s grid '" + spec + "'");
    }
  }
  if (parts.size() != 3 || parts[2] < 1 || parts[2] != std::floor(parts[2]) ||
      parts[0] > parts[1]) {
    throw ConfigError("s grid must be a:b:n with a <= b and integer n >= 1");
  }
  const int n = static_cast<int>(parts[2]);
  std::vector<double> s;
  for (int i = 0; i < n; ++i) {
    s.push_back(n == 1 ? parts[0] : parts[0] + (parts[1] - parts[0]) * i / (n - 1));
  }
  return s;
}

double param_num(const RunConfig& c, const char* key, double fallback) {
  if (!c.params.contains(key)) return fallback;
  if (!c.params.at(key).is_number()) {
    throw ConfigError(std::string("parameter '") + key + "' must be a number");
  }
  return c.params.at(key).get<double>();
}

double param_num(const RunConfig& c, const char* key) {
  if (!c.params.contains(key)) {
    throw ConfigError(std::string("missing parameter '") + key + "'");
  }
  return param_num(c, key, 0.0);
}

double input_num(const Json& in, const char* key) {
  if (!in.contains(key) || !in.at(key).is_number()) {
    throw ConfigError(std::string("bounds input '") + key + "' is required");
  }
  return in.at(key).get<double>();
}

SetModel require_model(const RunConfig& c) {
  if (c.model.is_null()) throw ConfigError("--model is required");
  return set_model_from_json(c.model);
}

struct Artifact {
  std::string body;
  std::string summary;
};

Json provenance(const RunConfig& c, const std::string& grid_spec) {
  return {{"command", c.command}, {"digest", c.digest()}, {"grid", grid_spec}};
}

std::string csv_comment(const RunConfig& c, const std::string& grid_spec) {
  return "# phidim " + c.command + " digest=" + c.digest() + " grid=" +
         grid_spec + "\n";
}

std::string wrap_json(const RunConfig& c, const std::string& grid_spec,
                      Json result) {
  Json j{{"provenance", provenance(c, grid_spec)}, {"result", std::move(result)}};
  return j.dump(2) + "\n";
}

std::string bracket(double lo, double hi) {
  return "[" + format_double(lo) + ", " + format_double(hi) + "]";
}

Artifact run_estimate(const RunConfig& c) {
  const SetModel model = require_model(c);
  const ScaleFunction phi = parse_scale_function(c.phi);
  const DeltaGrid grid = DeltaGrid::parse(c.grid.empty() ? "-60:-10:26" : c.grid);
  const DimensionProfile p = dimension_profile(model, phi, grid, c.tol);
  Artifact a;
  if (c.format == "csv") {
    a.body = csv_comment(c, p.grid_spec) + profile_csv(p);
  } else {
    a.body = wrap_json(c, p.grid_spec, to_json(p));
  }
  const Extrapolation& e = p.extrapolation;
  a.summary = "estimate " + model.id() + " " + p.phi + ": upper " +
              bracket(e.upper_lower, e.upper_upper) + " lower " +
              bracket(e.lower_lower, e.lower_upper) + " grid " + p.grid_spec;
  return a;
}

Json triple(const Json& in, const char* key) {
  if (!in.contains(key) || !in.at(key).is_array() || in.at(key).size() != 3) {
    throw ConfigError(std::string("bounds input '") + key +
                      "' must be [lower, upper, box_upper]");
  }
  return in.at(key);
}

DimTriple to_triple(const Json& t) {
  return {t[0].get<double>(), t[1].get<double>(), t[2].get<double>()};
}

Artifact run_bounds(const RunConfig& c) {
  const std::string formula = c.params.value("formula", std::string());
  const Json in = c.params.value("inputs", Json::object());
  Json value;
  if (formula == "general_lower" || formula == "general_lower_derivatives") {
    DimInputs d;
    d.assouad = input_num(in, "A");
    d.box_upper = input_num(in, "B");
    d.box_lower = in.contains("B_lower") ? input_num(in, "B_lower") : d.box_upper;
    d.theta = input_num(in, "theta");
    if (formula == "general_lower") {
      value = general_lower_bound(d);
    } else {
      const Derivatives der = general_lower_bound_derivatives(d);
      value = {{"first", der.first}, {"second", der.second}};
    }
  } else if (formula == "continuity_upper" || formula == "continuity_lower") {
    DimInputs d;
    d.assouad = input_num(in, "A");
    d.theta = input_num(in, "theta");
    const double dim = input_num(in, "dim");
    const double target = input_num(in, "phi");
    value = formula == "continuity_upper" ? continuity_upper_bound(dim, d, target)
                                          : continuity_lower_bound(dim, d, target);
  } else if (formula == "maincty") {
    const MainCtyBound b =
        maincty_bound(input_num(in, "dim"), input_num(in, "A"), input_num(in, "eta"));
    value = {{"alpha", b.alpha}, {"exponent_ratio", b.exponent_ratio}};
  } else if (formula == "holder") {
    value = holder_bound({input_num(in, "alpha"), input_num(in, "gamma"),
                          input_num(in, "dim"), input_num(in, "A")});
  } else if (formula == "product") {
    const ProductBounds b = product_bounds(to_triple(triple(in, "E")),
                                           to_triple(triple(in, "F")),
                                           in.value("self", false));
    value = {{"upper", {b.lower_for_upper, b.upper_for_upper}},
             {"lower", {b.lower_for_lower, b.upper_for_lower}}};
  } else if (formula == "gradient") {
    value = bound_gradient(input_num(in, "B"), input_num(in, "A"));
  } else if (formula == "mutual") {
    const MutualReport r = check_mutual_dependency(
        input_num(in, "theta_dim"), input_num(in, "theta"), input_num(in, "box"),
        input_num(in, "A"));
    value = {{"violation", r.violation}, {"bound", r.bound}, {"reason", r.reason}};
  } else {
    throw ConfigError(
        "bounds needs --formula general_lower|general_lower_derivatives|"
        "continuity_upper|continuity_lower|maincty|holder|product|gradient|mutual");
  }
  Json result{{"inputs", in}, {"value", value}, {"formula_id", formula}};
  return {wrap_json(c, "", result), "bounds " + formula + " = " + value.dump()};
}

Artifact run_phi(const RunConfig& c) {
  const ScaleFunction phi = parse_scale_function(c.phi);
  const DeltaGrid grid = DeltaGrid::parse(c.grid.empty() ? "-200:-10:96" : c.grid);
  Artifact a;
  if (c.format == "csv") {
    std::ostringstream os;
    os << csv_comment(c, grid.spec()) << "log2_delta,log2_phi\n";
    for (double ld : grid.log_deltas()) {
      if (!phi.in_domain(ld)) continue;
      os << format_double(ld / kLog2) << ','
         << format_double(phi.eval_log(ld) / kLog2) << '\n';
    }
    a.body = os.str();
  } else {
    Json rows = Json::array();
    for (double ld : grid.log_deltas()) {
      if (!phi.in_domain(ld)) continue;
      rows.push_back({ld / kLog2, phi.eval_log(ld) / kLog2});
    }
    Json result{{"phi", to_json(phi)}, {"log2_rows", rows}};
    const ExponentPair ep = exponent_pair(phi, grid);
    result["exponent_pair"] = {ep.theta1, ep.theta2};
    if (c.params.contains("compare")) {
      const ScaleFunction other =
          scale_function_from_json(c.params.at("compare"));
      result["compare"] = to_json(other);
      result["precedes"] = to_json(precedes(phi, other, kDefaultAlphas, grid));
      result["preceded_by"] = to_json(precedes(other, phi, kDefaultAlphas, grid));
      result["equivalent"] = to_json(equivalent(phi, other, kDefaultAlphas, grid));
    }
    a.body = wrap_json(c, grid.spec(), result);
  }
  a.summary = "phi " + phi.describe() + " grid " + grid.spec();
  return a;
}

Artifact run_frostman(const RunConfig& c) {
  const SetModel model = require_model(c);
  const ScaleFunction phi = parse_scale_function(c.phi);
  const double ld = param_num(c, "log2_delta") * kLog2;
  const double s = param_num(c, "s");
  FrostmanOptions opt;
  opt.base = static_cast<int>(param_num(c, "base", 20));
  const AtomicMeasure mu = build_frostman_measure(model, s, ld, phi, opt);
  const ScaleWindow w{phi.eval_log(ld), ld};
  const BallMassReport ball = verify_ball_mass(mu, w, s);
  const MassCertificate cert = mass_lower_bound(mu, w, s, 1.0, ball.c_observed());
  const std::string spec = "log2_delta=" + format_double(ld / kLog2);
  Artifact a;
  if (c.format == "csv") {
    a.body = csv_comment(c, spec) + measure_csv(mu);
  } else {
    Json result{{"measure", to_json(mu)},
                {"ball_mass", to_json(ball)},
                {"certificate",
                 {{"a", cert.a},
                  {"c_set", cert.c_set},
                  {"log_cost_bound", std::isfinite(cert.log_cost_bound) ? Json(cert.log_cost_bound) : Json(nullptr)}}}};
    a.body = wrap_json(c, spec, result);
  }
  a.summary = "frostman " + model.id() + ": " + std::to_string(mu.atoms.size()) +
              " atoms, c_observed " + format_double(ball.c_observed());
  return a;
}

Artifact run_interpolate(const RunConfig& c) {
  const SetModel model = require_model(c);
  const DeltaGrid grid = DeltaGrid::parse(c.grid.empty() ? "-60:-10:26" : c.grid);
  Artifact a;
  if (!c.s_grid.empty()) {
    const std::vector<double> sg = parse_s_grid(c.s_grid);
    const InterpolationReport r = verify_interpolation(model, sg, grid, c.tol);
    a.body = wrap_json(c, grid.spec(), to_json(r));
    a.summary = std::string("interpolate ") + model.id() + ": " +
                (r.all_pass ? "pass" : "fail") + " grid " + grid.spec();
    return a;
  }
  const PhiSTable t = phi_s_function(model, param_num(c, "s"), grid, c.tol);
  a.body = c.format == "csv" ? csv_comment(c, t.grid_spec) + phi_s_csv(t)
                             : wrap_json(c, t.grid_spec, to_json(t));
  a.summary = "interpolate " + model.id() + ": Phi_s table with " +
              std::to_string(t.rows.size()) + " rows, " +
              std::to_string(t.dropped_log_deltas.size()) + " dropped";
  return a;
}

Artifact run_carpet(const RunConfig& c) {
  const Json mj = c.model.is_null() ? Json{{"kind", "carpet"}} : c.model;
  const SetModel model = set_model_from_json(mj);
  const CarpetParams* cp = model.get_if<CarpetParams>();
  if (!cp) throw ConfigError("carpet command needs a carpet model");
  const CarpetDimensions d = carpet_dimensions(*cp);
  const double grad = bound_gradient(d.box, d.assouad);
  Json result{{"model", to_json(model)},
              {"dim_H", d.hausdorff},
              {"dim_B", d.box},
              {"dim_A", d.assouad},
              {"bound_gradient", grad},
              {"external_comparison", kExternalCarpetBound}};
  return {wrap_json(c, "", result),
          "carpet dim_H " + format_double(d.hausdorff) + " dim_B " +
              format_double(d.box) + " dim_A " + format_double(d.assouad) +
              " gradient " + format_double(grad)};
}

Artifact run_verify(const RunConfig& c) {
  const SetModel model = require_model(c);
  const ScaleFunction phi = parse_scale_function(c.phi);
  const DeltaGrid grid = DeltaGrid::parse(c.grid.empty() ? "-18:-8:11" : c.grid);
  const std::vector<double> sg =
      parse_s_grid(c.s_grid.empty() ? "0.1:0.9:33" : c.s_grid);
  FrostmanOptions opt;
  opt.base = static_cast<int>(param_num(c, "base", 20));
  const RoundtripReport r = massfrostman_roundtrip(model, phi, sg, grid, opt, c.tol);
  return {wrap_json(c, grid.spec(), to_json(r)),
          "verify " + model.id() + ": measure estimate " +
              format_double(r.measure_estimate) + " cover bracket " +
              bracket(r.cover_lower, r.cover_upper)};
}

void write_atomically(const std::string& path, const std::string& body) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + tmp.string() + "'");
    out << body;
    out.flush();
    if (!out) throw ConfigError("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw ConfigError("cannot rename onto '" + path + "': " + ec.message());
  }
}

}  // namespace

void RunConfig::validate() const {
  if (std::find(std::begin(kCommands), std::end(kCommands), command) ==
      std::end(kCommands)) {
    throw ConfigError("unknown command '" + command + "'");
  }
  if (!(tol > 0.0) || !std::isfinite(tol)) throw ConfigError("tol must be > 0");
  if (format != "csv" && format != "json") {
    throw ConfigError("format must be csv or json");
  }
  if (!grid.empty()) DeltaGrid::parse(grid);
  if (!s_grid.empty()) parse_s_grid(s_grid);
  if (!params.is_object()) throw ConfigError("params must be an object");
}

Json RunConfig::canonical() const {
  return {{"command", command}, {"model", model},   {"phi", phi},
          {"grid", grid},       {"s_grid", s_grid}, {"tol", tol},
          {"format", format},   {"seed", seed},     {"params", params}};
}

std::string RunConfig::digest() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a(canonical().dump()));
  return buf;
}

RunConfig RunConfig::from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  c.command = j.value("command", std::string());
  if (j.contains("model")) c.model = j.at("model");
  if (j.contains("phi")) {
    const Json& p = j.at("phi");
    c.phi = p.is_string() ? p.get<std::string>() : p.dump();
  }
  c.grid = j.value("grid", std::string());
  c.s_grid = j.value("s_grid", std::string());
  c.tol = j.value("tol", c.tol);
  c.out = j.value("out", std::string());
  c.format = j.value("format", c.format);
  c.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("params")) c.params = j.at("params");
  return c;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    Artifact a;
    const std::string& cmd = config.command;
    if (cmd == "estimate") a = run_estimate(config);
    else if (cmd == "bounds") a = run_bounds(config);
    else if (cmd == "phi") a = run_phi(config);
    else if (cmd == "frostman") a = run_frostman(config);
    else if (cmd == "interpolate") a = run_interpolate(config);
    else if (cmd == "carpet") a = run_carpet(config);
    else a = run_verify(config);
    if (config.out.empty()) {
      out << a.body;
    } else {
      write_atomically(config.out, a.body);
    }
    out << a.summary << '\n';
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidFunctionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Json::exception& e) {
    err << "error: malformed JSON value: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCompute;
  }
}

int cli_main(int argc, char** argv) {
  CLI::App app{"Phi-intermediate dimensions of structured fractal sets"};
  app.require_subcommand(1);
  std::string config_path, model, phi, grid, s_grid, out, format, formula,
      inputs, compare;
  double tol = 0.0, s = 0.0, log2_delta = 0.0;
  int base = 0;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--model", model, "model JSON file or inline JSON");
  app.add_option("--phi", phi, "scale function: power:x, log, stretched:c or JSON");
  app.add_option("--grid", grid, "log2 delta grid a:b:n[:log]");
  app.add_option("--s-grid", s_grid, "exponent grid a:b:n");
  app.add_option("--tol", tol, "bisection tolerance");
  app.add_option("--out", out, "output path (written atomically)");
  app.add_option("--format", format, "csv or json");
  app.add_option("--seed", seed, "seed for randomized instances");
  app.add_option("--s", s, "exponent");
  app.add_option("--log2-delta", log2_delta, "scale as log2 delta");
  app.add_option("--base", base, "cube base for the Frostman construction");
  app.add_option("--formula", formula, "bounds formula id");
  app.add_option("--inputs", inputs, "bounds inputs as inline JSON");
  app.add_option("--compare", compare, "second scale function for phi");
  for (const char* name : kCommands) app.add_subcommand(name)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }
  const auto given = [&](const char* flag) { return app.count(flag) > 0; };
  try {
    RunConfig c;
    if (given("--config")) c = RunConfig::from_json(read_json_file(config_path));
    c.command = app.get_subcommands().front()->get_name();
    if (given("--model")) c.model = parse_inline_or_file(model);
    if (given("--phi")) c.phi = phi;
    if (given("--grid")) c.grid = grid;
    if (given("--s-grid")) c.s_grid = s_grid;
    if (given("--tol")) c.tol = tol;
    if (given("--out")) c.out = out;
    if (given("--format")) c.format = format;
    if (given("--seed")) c.seed = seed;
    if (given("--s")) c.params["s"] = s;
    if (given("--log2-delta")) c.params["log2_delta"] = log2_delta;
    if (given("--base")) c.params["base"] = base;
    if (given("--formula")) c.params["formula"] = formula;
    if (given("--inputs")) c.params["inputs"] = parse_inline_or_file(inputs);
    if (given("--compare")) c.params["compare"] = Json(compare);
    return run(c, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace phidim
