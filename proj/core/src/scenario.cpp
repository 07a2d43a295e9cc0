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

#include "vwb/scenario.hpp"

#include <algorithm>
#include <cstdlib>
#include <regex>
#include <set>

#include "vwb/epigraph.hpp"
#include "vwb/errors.hpp"

namespace vwb {

namespace {

Real q(long n, long d = 1) { return Real::rational(n, d); }

const std::set<std::string>& parametric_ops() {
  static const std::set<std::string> ops{"certify", "parametric-epi", "solution-map", "robinson", "paravasys"};
  return ops;
}

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(where + ": missing '" + key + "'");
  return j.at(key);
}

std::vector<Affine> parse_affines(const Json& j) {
  std::vector<Affine> out;
  if (!j.is_array()) throw ParseError("expected a list of [a, b] pairs");
  for (const Json& t : j) {
    if (!t.is_array() || t.size() != 2) throw ParseError("affine term must be [a, b]");
    out.push_back(Affine{parse_real(t[0]), parse_real(t[1])});
  }
  return out;
}

std::vector<Affine2> parse_affines2(const Json& j) {
  std::vector<Affine2> out;
  if (!j.is_array()) throw ParseError("expected a list of [ax, ap, c] triples");
  for (const Json& t : j) {
    if (!t.is_array() || t.size() != 3) throw ParseError("affine term must be [ax, ap, c]");
    out.push_back(Affine2{parse_real(t[0]), parse_real(t[1]), parse_real(t[2])});
  }
  return out;
}

IntervalSet parse_set(const Json& j) {
  std::vector<Interval> parts;
  if (!j.is_array()) throw ParseError("a set is a list of [lo, hi] pairs");
  for (const Json& iv : j) {
    if (iv.is_array() && iv.size() == 2) {
      parts.push_back({parse_real(iv[0]), parse_real(iv[1])});
    } else {
      const Real v = parse_real(iv);
      parts.push_back({v, v});
    }
  }
  return IntervalSet::normalize(parts);
}

Json param_object(const Json& op) {
  Json p = Json::object();
  for (auto it = op.begin(); it != op.end(); ++it)
    if (it.key() != "op" && it.key() != "expect") p[it.key()] = it.value();
  return p;
}

OperationSpec op(const std::string& name, Json params, std::optional<std::string> expect = std::nullopt) {
  return OperationSpec{name, std::move(params), std::move(expect)};
}

// Step maps on [0, 1] with a jump at 0.
PMF step_map(const std::string& name, bool two_at_zero) {
  auto c = [](const Real& v) { return Band{std::nullopt, {Affine{q(0), v}}, {Affine{q(0), v}}}; };
  std::vector<Band> at_zero{c(q(0))};
  if (two_at_zero) at_zero.push_back(c(q(1)));
  return PMF(name, Range::closed(q(0), q(1)),
             {Piece{"zero", Range::point(q(0)), at_zero},
              Piece{"rest", Range::make(q(0), q(1), true, false), {c(two_at_zero ? q(0) : q(1))}}});
}

ParamMF param_affine(const std::string& name, const Real& ax, const Real& ap, const Real& c) {
  const Affine2 a{ax, ap, c};
  return ParamMF(name, Range::all(), Range::all(),
                 {ParamPiece{"g", Range::all(), Range::all(), {ParamBand{{a}, {a}}}}});
}

Scenario paper_counterexample_scenario() {
  Scenario s;
  s.name = "paper-counterexample";
  s.description = "F = [-x, inf) for x >= 0, {-1} otherwise; G = {0, 1}; F+G is not metrically regular";
  s.maps["F"] = counterexample_f();
  s.maps["G"] = counterexample_g();
  NeighborhoodSchedule sched;
  sched.r0 = q(1, 10);
  s.schedule = sched;
  s.parametric = ParametricScenario{"counter", s.maps["F"], ParamMF::lift(s.maps["G"], q(0)),
                                    q(0), q(0), q(0), q(1), q(0), q(0)};
  s.operations = {
      op("counterexample", {{"delta", "1/10"}}, "not metrically regular"),
      op("modulus", {{"map", "F+G"}, {"x", "0"}, {"y", "0"}}, "irregular"),
      op("modulus", {{"map", "F"}, {"x", "0"}, {"y", "0"}}, "regular"),
      op("sum-stability", {{"x", "0"}, {"y", "0"}, {"z", "0"}, {"eps", {"1/40"}}}, "unstable"),
      op("closedness", {{"map", "F"}, {"region", {"-2", "2", "-2", "2"}}}, "violation"),
      op("robinson", {{"theta", "1/4"}}, "PreconditionViolated"),
  };
  return s;
}

Scenario step_envelope_scenario() {
  Scenario s;
  s.name = "remark-envelope";
  s.description = "F, G on [0, 1] with G not lsc at (0, 1): full and reduced envelopes are 2 and 1";
  s.maps["F"] = step_map("F", false);
  s.maps["G"] = step_map("G", true);
  s.operations = {
      op("epi-envelope", {{"x", "0"}, {"k", "1"}, {"y", "3"}, {"lambda", "1"}}, "discrepancy-flagged"),
      op("epi-envelope", {{"x", "1/2"}, {"k", "0"}, {"y", "3"}, {"lambda", "1"}}, "agree"),
      op("closedness", {{"map", "F"}, {"region", {"0", "1", "-1", "2"}}}, "violation"),
      op("closedness", {{"map", "G"}, {"region", {"0", "1", "-1", "2"}}}, "closed"),
  };
  return s;
}

Scenario affine_tight_scenario() {
  Scenario s;
  s.name = "affine-tight";
  s.description = "F = {2x}, G = {-x/2}, tau = lambda = 1/2: the sum bound 2/3 is attained";
  s.maps["F"] = PMF::affine("F", q(2), q(0));
  s.maps["G"] = PMF::affine("G", q(-1, 2), q(0));
  const Json center{{"x", "0"}, {"k", "0"}, {"y", "0"}};
  Json sum = center;
  sum["tau"] = "1/2";
  sum["lambda"] = "1/2";
  Json epi = center;
  epi["lambda"] = "1/2";
  s.operations = {
      op("sum-check", sum, "holds"),
      op("epi-modulus", epi, "regular"),
      op("modulus", {{"map", "F+G"}, {"x", "0"}, {"y", "0"}}, "regular"),
      op("equivalence", {{"map", "F"}, {"x", "0"}, {"y", "0"}}, "holds"),
      op("slope-bound", {{"x", "0"}, {"k", "0"}, {"y", "1"}, {"delta", "0"}, {"lambda", "1"}}, "holds"),
      op("coderivative", {{"map", "F"}, {"x", "0"}, {"y", "0"}, {"ystar", "1"}, {"kind", "limiting"}}),
      op("kernel", center, "predicts-regular"),
      op("zero-set", {{"lambda", "1/2"}, {"box", {"-1", "1", "-1", "1", "-1", "1"}}}, "holds"),
      op("slope", {{"map", "F"}, {"x", "1"}, {"y", "0"}}),
  };
  return s;
}

Scenario affine_parametric_scenario() {
  Scenario s;
  s.name = "affine-parametric";
  s.description = "0 in 2x + G(x, p) with G(x, p) = {p - x/2}: S(p) = {-2p/3}";
  s.maps["F"] = PMF::affine("F", q(2), q(0));
  s.parametric = ParametricScenario{"affine-parametric", s.maps["F"], param_affine("G", q(-1, 2), q(1), q(0)),
                                    q(0), q(0), q(0), q(1, 2), q(1, 2), q(1)};
  s.operations = {
      op("certify", Json::object(), "certified"),
      op("parametric-epi", Json::object(), "holds"),
      op("solution-map", Json::object(), "holds"),
      op("robinson", {{"theta", "1"}}, "holds"),
      op("paravasys", {{"m", "3/2"}, {"gamma", "1"}}, "holds"),
  };
  return s;
}

Scenario kernel_scenario(bool positive) {
  Scenario s;
  s.name = positive ? "kernel-positive" : "kernel-negative";
  s.description = positive ? "F = {x}, G = {0}: kernel {0}, E regular"
                           : "F = {0}, G = {0}: kernel R, E not regular";
  s.maps["F"] = PMF::affine("F", positive ? q(1) : q(0), q(0));
  s.maps["G"] = PMF::affine("G", q(0), q(0));
  const Json center{{"x", "0"}, {"k", "0"}, {"y", "0"}};
  Json epi = center;
  epi["lambda"] = "0";
  const std::string reg = positive ? "regular" : "irregular";
  s.operations = {
      op("kernel", center, positive ? "predicts-regular" : "predicts-nothing"),
      op("epi-modulus", epi, reg),
      op("hypothesis", center, "holds"),
      op("coderivative", {{"map", "F"}, {"x", "0"}, {"y", "0"}, {"ystar", "0"}, {"kind", "limiting"}}),
  };
  return s;
}

std::vector<Real> reals(const Json& j, std::size_t n, const std::string& what) {
  if (!j.is_array() || j.size() != n) throw ValidationError(what + " needs " + std::to_string(n) + " numbers");
  std::vector<Real> out;
  for (const Json& v : j) out.push_back(parse_real(v));
  return out;
}

}  // namespace

const std::vector<std::string>& known_operations() {
  static const std::vector<std::string> ops{
      "certify",      "closedness",   "coderivative", "counterexample", "envelope", "epi-envelope",
      "epi-modulus",  "epi-slope",    "equivalence",  "hypothesis",     "kernel",   "modulus",
      "parametric-epi", "paravasys",  "robinson",     "slope",          "slope-bound", "solution-map",
      "sum-check",    "sum-stability", "zero-set"};
  return ops;
}

const std::vector<std::string>& builtin_scenario_names() {
  static const std::vector<std::string> names{"paper-counterexample", "remark-envelope", "affine-tight",
                                              "affine-parametric",    "kernel-positive", "kernel-negative"};
  return names;
}

Scenario builtin_scenario(const std::string& name) {
  if (name == "paper-counterexample") return paper_counterexample_scenario();
  if (name == "remark-envelope") return step_envelope_scenario();
  if (name == "affine-tight") return affine_tight_scenario();
  if (name == "affine-parametric") return affine_parametric_scenario();
  if (name == "kernel-positive") return kernel_scenario(true);
  if (name == "kernel-negative") return kernel_scenario(false);
  throw UnknownScenario("unknown scenario '" + name + "'");
}

PiecewiseMultifunction resolve_map(const Scenario& s, const std::string& ref) {
  std::vector<std::string> names;
  std::size_t start = 0;
  for (;;) {
    const std::size_t plus = ref.find('+', start);
    names.push_back(ref.substr(start, plus == std::string::npos ? std::string::npos : plus - start));
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  std::optional<PMF> out;
  for (const std::string& n : names) {
    const auto it = s.maps.find(n);
    if (it == s.maps.end()) throw ValidationError("scenario '" + s.name + "' has no map '" + n + "'");
    out = out ? sum_mf(*out, it->second).renamed(ref) : it->second;
  }
  return *out;
}

void ScenarioConfig::validate() const {
  if (schedule) schedule->validate();
  grid.validate();
  if (!(tolerance >= 0)) throw ValidationError("tolerance must be nonnegative");
  const auto& ops = known_operations();
  for (const Scenario& s : scenarios) {
    if (s.schedule) s.schedule->validate();
    for (const OperationSpec& o : s.operations) {
      if (std::find(ops.begin(), ops.end(), o.op) == ops.end())
        throw UnknownOperation("unknown operation '" + o.op + "' in scenario '" + s.name + "'");
      if (!o.params.is_object()) throw ValidationError("parameters of '" + o.op + "' must be an object");
      if (parametric_ops().count(o.op)) {
        if (!s.parametric) throw ValidationError("'" + o.op + "' needs a parametric scenario in '" + s.name + "'");
        continue;
      }
      for (const char* key : {"map", "f", "g"})
        if (o.params.contains(key)) resolve_map(s, o.params.at(key).get<std::string>());
      const bool uses_pair = o.op.rfind("epi-", 0) == 0 || o.op == "zero-set" || o.op == "sum-check" ||
                             o.op == "sum-stability" || o.op == "kernel" || o.op == "hypothesis" ||
                             o.op == "slope-bound";
      if (uses_pair) {
        resolve_map(s, o.params.value("f", std::string("F")));
        resolve_map(s, o.params.value("g", std::string("G")));
      } else if (o.op != "counterexample") {
        resolve_map(s, o.params.value("map", std::string("F")));
      }
    }
  }
}

Real parse_real(const Json& j) {
  if (j.is_string()) return Real::parse(j.get<std::string>());
  if (j.is_number_integer()) return Real(j.get<long>());
  if (j.is_number_float()) return Real::parse(j.dump());
  throw ParseError("expected a number, got " + j.dump());
}

Range parse_range(const Json& j) {
  if (!j.is_string()) throw ParseError("a range is a string like \"[0, 1)\"");
  const std::string s = j.get<std::string>();
  if (s == "all" || s == "R") return Range::all();
  static const std::regex re(R"(^\s*([\[\(])\s*([^,\s]+)\s*,\s*([^\]\)\s]+)\s*([\]\)])\s*$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw ParseError("cannot parse range '" + s + "'");
  const Range r = Range::make(Real::parse(m[2].str()), Real::parse(m[3].str()), m[1] == "(", m[4] == ")");
  if (r.empty()) throw MalformedInterval("empty range '" + s + "'");
  return r;
}

PiecewiseMultifunction parse_map(const std::string& name, const Json& j) {
  if (!j.is_object()) throw ParseError("map '" + name + "' must be an object");
  if (j.contains("affine")) {
    const auto ab = reals(j.at("affine"), 2, "affine");
    return PMF::affine(name, ab[0], ab[1]);
  }
  if (j.contains("constant")) return PMF::constant(name, parse_set(j.at("constant")));
  const Range domain = j.contains("domain") ? parse_range(j.at("domain")) : Range::all();
  std::vector<Piece> pieces;
  for (const Json& p : require(j, "pieces", "map '" + name + "'")) {
    Piece piece{p.value("name", std::string("piece")), parse_range(require(p, "x", "piece")), {}};
    for (const Json& b : p.value("bands", Json::array())) {
      Band band;
      if (b.contains("where")) band.where = parse_range(b.at("where"));
      band.lo = parse_affines(b.value("lo", Json::array()));
      band.hi = parse_affines(b.value("hi", Json::array()));
      piece.bands.push_back(std::move(band));
    }
    pieces.push_back(std::move(piece));
  }
  PMF f(name, domain, std::move(pieces));
  f.validate();
  return f;
}

ParametricMultifunction parse_param_map(const std::string& name, const Json& j) {
  if (!j.is_object()) throw ParseError("map '" + name + "' must be an object");
  if (j.contains("affine")) {
    const auto a = reals(j.at("affine"), 3, "affine");
    return param_affine(name, a[0], a[1], a[2]);
  }
  if (j.contains("lift")) {
    const Real coeff = j.contains("coeff") ? parse_real(j.at("coeff")) : Real(0);
    return ParamMF::lift(parse_map(name, j.at("lift")), coeff);
  }
  const Range xd = j.contains("x_domain") ? parse_range(j.at("x_domain")) : Range::all();
  const Range pd = j.contains("p_domain") ? parse_range(j.at("p_domain")) : Range::all();
  std::vector<ParamPiece> pieces;
  for (const Json& p : require(j, "pieces", "map '" + name + "'")) {
    ParamPiece piece{p.value("name", std::string("piece")), parse_range(require(p, "x", "piece")),
                     parse_range(require(p, "p", "piece")), {}};
    for (const Json& b : p.value("bands", Json::array()))
      piece.bands.push_back(ParamBand{parse_affines2(b.value("lo", Json::array())),
                                      parse_affines2(b.value("hi", Json::array()))});
    pieces.push_back(std::move(piece));
  }
  ParamMF g(name, xd, pd, std::move(pieces));
  g.validate();
  return g;
}

NeighborhoodSchedule parse_schedule(const Json& j) {
  NeighborhoodSchedule s;
  if (j.contains("r0")) s.r0 = parse_real(j.at("r0"));
  if (j.contains("shrink")) s.shrink = parse_real(j.at("shrink"));
  if (j.contains("depth")) s.depth = j.at("depth").get<int>();
  s.validate();
  return s;
}

GridSpec parse_grid(const Json& j) {
  GridSpec g;
  if (j.contains("counts")) {
    const Json& c = j.at("counts");
    g.counts = c.is_array() ? c.get<std::vector<int>>() : std::vector<int>{c.get<int>()};
  }
  if (j.contains("mode")) g.mode = sampling_mode_from_string(j.at("mode").get<std::string>());
  g.validate();
  return g;
}

Scenario parse_scenario(const Json& j) {
  if (j.is_string()) return builtin_scenario(j.get<std::string>());
  const std::string name = require(j, "name", "scenario").get<std::string>();
  Scenario s;
  const bool inline_def = j.contains("maps") || j.contains("parametric");
  if (!inline_def) {
    s = builtin_scenario(name);
  } else {
    s.name = name;
  }
  if (j.contains("description")) s.description = j.at("description").get<std::string>();
  if (j.contains("maps"))
    for (auto it = j.at("maps").begin(); it != j.at("maps").end(); ++it) s.maps[it.key()] = parse_map(it.key(), it.value());
  if (j.contains("parametric")) {
    const Json& p = j.at("parametric");
    const std::string fname = p.value("f", std::string("F"));
    ParametricScenario ps{name,
                          resolve_map(s, fname),
                          parse_param_map("G", require(p, "g", "parametric")),
                          parse_real(p.value("xbar", Json("0"))),
                          parse_real(p.value("pbar", Json("0"))),
                          parse_real(p.value("kbar", Json("0"))),
                          parse_real(require(p, "tau", "parametric")),
                          parse_real(require(p, "lambda", "parametric")),
                          parse_real(require(p, "gamma", "parametric"))};
    ps.validate();
    s.parametric = ps;
  }
  if (j.contains("schedule")) s.schedule = parse_schedule(j.at("schedule"));
  if (j.contains("operations")) {
    s.operations.clear();
    for (const Json& o : j.at("operations")) {
      OperationSpec spec{require(o, "op", "operation").get<std::string>(), param_object(o), std::nullopt};
      if (o.contains("expect")) spec.expect = o.at("expect").get<std::string>();
      s.operations.push_back(std::move(spec));
    }
  } else if (inline_def) {
    throw ValidationError("scenario '" + name + "' defines maps but no operations");
  }
  return s;
}

ScenarioConfig parse_config(const Json& j) {
  try {
    if (!j.is_object()) throw ParseError("configuration must be an object");
    if (j.contains("schema") && j.at("schema") != kScenarioSchema)
      throw ValidationError("unsupported schema " + j.at("schema").dump());
    ScenarioConfig cfg;
    cfg.backend = j.contains("backend") ? backend_from_string(j.at("backend").get<std::string>()) : default_backend();
    if (j.contains("tolerance")) cfg.tolerance = j.at("tolerance").get<double>();
    if (j.contains("schedule")) cfg.schedule = parse_schedule(j.at("schedule"));
    if (j.contains("grid")) cfg.grid = parse_grid(j.at("grid"));
    if (j.contains("output")) {
      const Json& o = j.at("output");
      if (o.contains("path")) cfg.output_path = o.at("path").get<std::string>();
      if (o.contains("format")) cfg.format = emit_format_from_string(o.at("format").get<std::string>());
    }
    for (const Json& s : require(j, "scenarios", "configuration")) cfg.scenarios.push_back(parse_scenario(s));
    cfg.validate();
    return cfg;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed configuration: ") + e.what());
  }
}

ScenarioConfig parse_config_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return parse_config(j);
}

Backend default_backend() {
  const char* env = std::getenv("VWB_BACKEND");
  if (env == nullptr || *env == '\0') return Backend::rational;
  return backend_from_string(env);
}

}  // namespace vwb
