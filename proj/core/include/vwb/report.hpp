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

#ifndef VWB_REPORT_HPP_
#define VWB_REPORT_HPP_

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vwb/interval_set.hpp"
#include "vwb/numeric.hpp"
#include "vwb/sampling.hpp"

namespace vwb {

// Objects keep their keys sorted, which makes dump() canonical.
using Json = nlohmann::json;

inline constexpr const char* kReportSchema = "vwb.report/1";
inline constexpr const char* kScenarioSchema = "vwb.scenario/1";

enum class Outcome { pass, violation, inconclusive };
std::string to_string(Outcome o);

// Worse of two outcomes: violation > inconclusive > pass.
Outcome worst(Outcome a, Outcome b);

struct WitnessRow {
  std::string kind;
  std::vector<Real> point;
  Real value;
};

struct TraceRow {
  std::string series;
  Real radius;
  Real value;
};

struct OperationResult {
  std::string op;
  Json params = Json::object();
  std::string verdict;
  std::optional<std::string> expect;
  Outcome status = Outcome::inconclusive;
  Json result = Json::object();
  std::vector<std::string> evidence;
  std::vector<WitnessRow> witnesses;
  std::vector<TraceRow> traces;
};

struct ScenarioResult {
  std::string scenario;
  std::vector<OperationResult> operations;
};

/// Results of one batch, in input order.
struct Report {
  Backend backend = Backend::rational;
  double tolerance = 1e-6;
  std::vector<ScenarioResult> entries;
};

Outcome overall(const Report& r);
// 0 all pass, 1 certified violation, 2 inconclusive.
int exit_code(const Report& r);

Json to_json(const Real& v);
Json to_json(const IntervalSet& s);
Json to_json(const Trace& t);
Json to_json(const std::vector<Real>& v);
Json to_json(const Report& r);

enum class EmitFormat { canonical_object, witness_table, plot_data };
std::string to_string(EmitFormat f);
EmitFormat emit_format_from_string(const std::string& s);

// canonical-object: indented JSON with sorted keys and a trailing newline.
// witness-table, plot-data: CSV with a header row.
std::string emit(const Report& r, EmitFormat format);

}  // namespace vwb

#endif  // VWB_REPORT_HPP_
