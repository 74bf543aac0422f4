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

#ifndef PHIDIM_JSON_IO_HPP_
#define PHIDIM_JSON_IO_HPP_

#include <string>
#include <string_view>

#include <json.hpp>

#include "phidim/bounds.hpp"
#include "phidim/covers.hpp"
#include "phidim/estimator.hpp"
#include "phidim/interpolation.hpp"
#include "phidim/measures.hpp"
#include "phidim/scale_function.hpp"
#include "phidim/set_model.hpp"

namespace phidim {

using Json = nlohmann::ordered_json;

Json to_json(const ScaleFunction& phi);
ScaleFunction scale_function_from_json(const Json& j);
// Accepts a JSON object or a shorthand: "power:0.5", "log", "stretched:0.5".
ScaleFunction parse_scale_function(std::string_view text);

Json to_json(const SetModel& model);
SetModel set_model_from_json(const Json& j);

Json to_json(const CoverCost& c);
Json to_json(const DimensionProfile& p);
Json to_json(const AtomicMeasure& mu);
Json to_json(const BallMassReport& r);
Json to_json(const RoundtripReport& r);
Json to_json(const PhiSTable& t);
Json to_json(const InterpolationReport& r);
Json to_json(const ComparisonReport& r);

// Reads a PhiSTable JSON document back as a tabulated scale function.
ScaleFunction phi_s_from_json(const Json& j);

std::string profile_csv(const DimensionProfile& p);
std::string measure_csv(const AtomicMeasure& mu);
std::string phi_s_csv(const PhiSTable& t);

}  // namespace phidim

#endif  // PHIDIM_JSON_IO_HPP_
