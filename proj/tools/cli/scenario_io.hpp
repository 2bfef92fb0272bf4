// Copyright 2026 The Screening Contracts Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Scenario files: strict JSON parsing into a Scenario and the echo used in
// reports.

#ifndef SCREENING_CLI_SCENARIO_IO_HPP_
#define SCREENING_CLI_SCENARIO_IO_HPP_

#include <filesystem>
#include <string_view>

#include <json.hpp>

#include "screening/simulation.hpp"

namespace screening::cli {

using Json = nlohmann::ordered_json;

// Throws Error{kInvalidScenario}; the message starts with the offending
// field path (e.g. "experts[1].theta.radius") or names the unknown key.
Scenario parse_scenario(const Json& doc);
Scenario parse_scenario_text(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

Json forecast_to_json(const Forecast& f);
Json theta_to_json(const PlausibleSet& theta);
Json scenario_to_json(const Scenario& sc);

}  // namespace screening::cli

#endif  // SCREENING_CLI_SCENARIO_IO_HPP_
