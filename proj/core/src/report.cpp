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

#include "vwb/report.hpp"

#include <sstream>

#include "vwb/errors.hpp"

namespace vwb {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::violation: return "violation";
    case Outcome::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

int rank(Outcome o) {
  switch (o) {
    case Outcome::pass: return 0;
    case Outcome::inconclusive: return 1;
    case Outcome::violation: return 2;
  }
  return 1;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join_point(const std::vector<Real>& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ";" : "") + p[i].str();
  return s;
}

}  // namespace

Outcome worst(Outcome a, Outcome b) { return rank(a) >= rank(b) ? a : b; }

Outcome overall(const Report& r) {
  Outcome o = Outcome::pass;
  for (const ScenarioResult& s : r.entries)
    for (const OperationResult& op : s.operations) o = worst(o, op.status);
  return o;
}

int exit_code(const Report& r) {
  switch (overall(r)) {
    case Outcome::pass: return 0;
    case Outcome::violation: return 1;
    case Outcome::inconclusive: return 2;
  }
  return 2;
}

Json to_json(const Real& v) { return v.str(); }

Json to_json(const IntervalSet& s) { return s.str(); }

Json to_json(const std::vector<Real>& v) {
  Json out = Json::array();
  for (const Real& x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const Trace& t) {
  Json out = Json::array();
  for (const TracePoint& p : t) out.push_back(Json::array({to_json(p.radius), to_json(p.value)}));
  return out;
}

Json to_json(const Report& r) {
  Json entries = Json::array();
  std::size_t counts[3] = {0, 0, 0};
  for (const ScenarioResult& s : r.entries) {
    Json ops = Json::array();
    for (const OperationResult& op : s.operations) {
      Json j{{"op", op.op},
             {"params", op.params},
             {"verdict", op.verdict},
             {"status", to_string(op.status)},
             {"result", op.result},
             {"evidence", op.evidence}};
      if (op.expect) j["expect"] = *op.expect;
      ops.push_back(std::move(j));
      ++counts[rank(op.status)];
    }
    entries.push_back(Json{{"scenario", s.scenario}, {"operations", std::move(ops)}});
  }
  return Json{{"schema", kReportSchema},
              {"backend", to_string(r.backend)},
              {"tolerance", r.tolerance},
              {"entries", std::move(entries)},
              {"summary",
               {{"pass", counts[0]},
                {"inconclusive", counts[1]},
                {"violation", counts[2]},
                {"status", to_string(overall(r))},
                {"exit_code", exit_code(r)}}}};
}

std::string to_string(EmitFormat f) {
  switch (f) {
    case EmitFormat::canonical_object: return "canonical-object";
    case EmitFormat::witness_table: return "witness-table";
    case EmitFormat::plot_data: return "plot-data";
  }
  return "canonical-object";
}

EmitFormat emit_format_from_string(const std::string& s) {
  if (s == "canonical-object" || s == "json") return EmitFormat::canonical_object;
  if (s == "witness-table") return EmitFormat::witness_table;
  if (s == "plot-data") return EmitFormat::plot_data;
  throw ValidationError("unknown output format: " + s);
}

std::string emit(const Report& r, EmitFormat format) {
  std::ostringstream out;
  switch (format) {
    case EmitFormat::canonical_object:
      out << to_json(r).dump(2) << '\n';
      break;
    case EmitFormat::witness_table:
      out << "scenario,operation,index,kind,point,value\n";
      for (const ScenarioResult& s : r.entries)
        for (std::size_t i = 0; i < s.operations.size(); ++i)
          for (const WitnessRow& w : s.operations[i].witnesses)
            out << csv_field(s.scenario) << ',' << csv_field(s.operations[i].op) << ',' << i << ','
                << csv_field(w.kind) << ',' << join_point(w.point) << ',' << w.value.str() << '\n';
      break;
    case EmitFormat::plot_data:
      out << "scenario,operation,index,series,radius,value\n";
      for (const ScenarioResult& s : r.entries)
        for (std::size_t i = 0; i < s.operations.size(); ++i)
          for (const TraceRow& t : s.operations[i].traces)
            out << csv_field(s.scenario) << ',' << csv_field(s.operations[i].op) << ',' << i << ','
                << csv_field(t.series) << ',' << t.radius.str() << ',' << t.value.str() << '\n';
      break;
  }
  return out.str();
}

}  // namespace vwb
