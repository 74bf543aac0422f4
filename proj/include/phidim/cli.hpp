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

#ifndef PHIDIM_CLI_HPP_
#define PHIDIM_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>

#include "phidim/json_io.hpp"

namespace phidim {

struct RunConfig {
  std::string command;
  Json model;
  std::string phi = "power:0.5";
  std::string grid;
  std::string s_grid;
  double tol = 1e-3;
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 0;
  // Command-specific settings (s, log2_delta, base, formula, inputs, ...).
  Json params = Json::object();

  // Throws ConfigError on invalid settings.
  void validate() const;
  // Everything except the output path, in a fixed key order.
  Json canonical() const;
  std::string digest() const;

  static RunConfig from_json(const Json& j);
};

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCompute = 3;

int run(const RunConfig& config, std::ostream& out, std::ostream& err);
int cli_main(int argc, char** argv);

}  // namespace phidim

#endif  // PHIDIM_CLI_HPP_
