// Copyright 2026 The vwb Authors
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

#ifndef VWB_SCENARIO_HPP_
#define VWB_SCENARIO_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vwb/multifunction.hpp"
#include "vwb/parametric.hpp"
#include "vwb/report.hpp"
#include "vwb/sampling.hpp"
#include "vwb/variational.hpp"

namespace vwb {

struct OperationSpec {
  std::string op;
  Json params = Json::object();
  std::optional<std::string> expect;  // verdict that counts as a pass
};

struct Scenario {
  std::string name;
  std::string description;
  std::map<std::string, PiecewiseMultifunction> maps;
  std::optional<ParametricScenario> parametric;
  std::optional<NeighborhoodSchedule> schedule;
  std::vector<OperationSpec> operations;
};

struct ScenarioConfig {
  std::vector<Scenario> scenarios;
  Backend backend = Backend::rational;
  double tolerance = 1e-6;
  std::optional<NeighborhoodSchedule> schedule;  // overrides every scenario's
  GridSpec grid;
  std::optional<std::string> output_path;
  EmitFormat format = EmitFormat::canonical_object;

  // Every operation is known and every map reference resolves; throws
  // UnknownOperation or ValidationError.
  void validate() const;
};

const std::vector<std::string>& known_operations();
const std::vector<std::string>& builtin_scenario_names();
Scenario builtin_scenario(const std::string& name);  // throws UnknownScenario

// "F", or a sum "F+G" of maps of the scenario; throws ValidationError.
PiecewiseMultifunction resolve_map(const Scenario& s, const std::string& ref);

// Inline definitions. Numbers are strings ("1/2", "0.25", "-inf") or JSON
// integers. Ranges use "[a, b)" notation. See docs/file-format.md.
Real parse_real(const Json& j);
Range parse_range(const Json& j);
PiecewiseMultifunction parse_map(const std::string& name, const Json& j);
ParametricMultifunction parse_param_map(const std::string& name, const Json& j);
NeighborhoodSchedule parse_schedule(const Json& j);
GridSpec parse_grid(const Json& j);
Scenario parse_scenario(const Json& j);
// Throws ParseError, UnknownScenario, UnknownOperation or ValidationError.
ScenarioConfig parse_config(const Json& j);
ScenarioConfig parse_config_text(const std::string& text);

// Backend named by VWB_BACKEND ("rational" or "float"), rational if unset.
Backend default_backend();

}  // namespace vwb

#endif  // VWB_SCENARIO_HPP_
