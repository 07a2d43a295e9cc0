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

#include "vwb/runner.hpp"

#include <atomic>
#include <functional>
#include <map>
#include <set>
#include <thread>

#include "vwb/coderivative.hpp"
#include "vwb/envelope.hpp"
#include "vwb/epigraph.hpp"
#include "vwb/errors.hpp"
#include "vwb/regularity.hpp"
#include "vwb/variational.hpp"

namespace vwb {

namespace {

Outcome intrinsic(const std::string& v) {
  static const std::set<std::string> pass{"holds", "regular", "stable", "agree", "discrepancy-flagged", "closed",
                                          "predicts-regular", "certified", "measured"};
  static const std::set<std::string> fail{"violated", "irregular", "unstable", "violation", "disagree",
                                          "not-certified", "not metrically regular"};
  if (pass.count(v)) return Outcome::pass;
  if (fail.count(v)) return Outcome::violation;
  return Outcome::inconclusive;
}

// Exact verdicts stand; float runs downgrade a pass to inconclusive-pass.
std::string passed(bool ok, bool exact) {
  if (!ok) return "violated";
  return exact ? "holds" : "inconclusive-pass";
}

class Ctx {
 public:
  Ctx(const Scenario& s, const OperationSpec& op, const ScenarioConfig& cfg, OperationResult& out)
      : s_(s), p_(op.params), cfg_(cfg), out_(out), fl_(cfg.backend == Backend::floating) {
    const NeighborhoodSchedule base =
        cfg.schedule ? *cfg.schedule : (s.schedule ? *s.schedule : NeighborhoodSchedule::defaults(cfg.backend));
    sched = fl_ ? base.to_float() : base;
    grid = cfg.grid;
  }

  bool fl() const { return fl_; }
  double tol() const { return cfg_.tolerance; }
  const Json& params() const { return p_; }

  Real num(const char* key, const char* def) const {
    const Real v = p_.contains(key) ? parse_real(p_.at(key)) : Real::parse(def);
    return fl_ ? v.to_float() : v;
  }
  std::vector<Real> nums(const char* key, const std::vector<const char*>& def) const {
    std::vector<Real> out;
    if (p_.contains(key)) {
      for (const Json& v : p_.at(key)) out.push_back(parse_real(v));
    } else {
      for (const char* d : def) out.push_back(Real::parse(d));
    }
    if (fl_)
      for (Real& v : out) v = v.to_float();
    return out;
  }
  std::string text(const char* key, const char* def) const { return p_.value(key, std::string(def)); }
  PMF map(const char* key, const char* def) const {
    const PMF f = resolve_map(s_, text(key, def));
    return fl_ ? f.to_float() : f;
  }
  ParametricScenario parametric() const {
    ParametricScenario ps = *s_.parametric;
    if (fl_) {
      ps.f = ps.f.to_float();
      ps.g = ps.g.to_float();
      for (Real* v : {&ps.xbar, &ps.pbar, &ps.kbar, &ps.tau, &ps.lambda, &ps.gamma}) *v = v->to_float();
    }
    return ps;
  }

  void evidence(std::string line) { out_.evidence.push_back(std::move(line)); }
  void witness(const std::string& kind, std::vector<Real> point, const Real& value) {
    out_.witnesses.push_back(WitnessRow{kind, std::move(point), value});
  }
  void trace(const std::string& series, const Trace& t) {
    for (const TracePoint& pt : t) out_.traces.push_back(TraceRow{series, pt.radius, pt.value});
  }

  NeighborhoodSchedule sched;
  GridSpec grid;

 private:
  const Scenario& s_;
  const Json& p_;
  const ScenarioConfig& cfg_;
  OperationResult& out_;
  bool fl_;
};

std::string join(const Trace& t) {
  std::string s;
  for (const TracePoint& p : t) s += (s.empty() ? "" : ", ") + p.value.str();
  return s;
}

Json modulus_json(Ctx& c, const ModulusReport& m, const std::string& series) {
  Json w = Json::array();
  for (const ModulusWitness& x : m.witnesses) {
    w.push_back(Json{{"point", to_json(x.point)}, {"ratio", to_json(x.ratio)}});
    c.witness(series, x.point, x.ratio);
  }
  c.trace(series, m.trace);
  return Json{{"kind", to_string(m.kind)},     {"value", to_json(m.value)},  {"verdict", to_string(m.verdict)},
              {"backend", to_string(m.backend)}, {"samples", m.samples},     {"trace", to_json(m.trace)},
              {"witnesses", std::move(w)}};
}

Json witness_json(const StabilityWitness& w) {
  return Json{{"epsilon", to_json(w.epsilon)}, {"delta", to_json(w.delta)}, {"x", to_json(w.x)}, {"w", to_json(w.w)}};
}

Json stability_json(Ctx& c, const SumStabilityReport& r) {
  Json rows = Json::array();
  for (const StabilityRow& row : r.rows) {
    Json f = Json::array();
    for (const StabilityWitness& w : row.failures) f.push_back(witness_json(w));
    rows.push_back(Json{{"epsilon", to_json(row.epsilon)},
                        {"delta", row.delta ? to_json(*row.delta) : Json(nullptr)},
                        {"failures", std::move(f)}});
  }
  Json out{{"verdict", to_string(r.verdict)}, {"shortcut_used", r.shortcut_used},
           {"backend", to_string(r.backend)}, {"rows", std::move(rows)}};
  if (r.witness) {
    out["witness"] = witness_json(*r.witness);
    c.witness("sum-stability", {r.witness->epsilon, r.witness->delta, r.witness->x, r.witness->w}, r.witness->w);
  }
  return out;
}

Json certificate_json(Ctx& c, const ConstantsCertificate& cc) {
  return Json{{"certified", cc.certified},
              {"detail", cc.detail},
              {"f_modulus", modulus_json(c, cc.f_modulus, "f-modulus")},
              {"g_x", modulus_json(c, cc.g_x, "g-lipschitz-x")},
              {"g_p", modulus_json(c, cc.g_p, "g-lipschitz-p")}};
}

std::string modulus_verdict(const ModulusReport& m) { return to_string(m.verdict); }

using Handler = std::function<std::string(Ctx&, Json&)>;

std::string op_modulus(Ctx& c, Json& r) {
  const PMF f = c.map("map", "F");
  const Real x = c.num("x", "0"), y = c.num("y", "0");
  const std::string kind = c.text("kind", "metric-regularity");
  ModulusReport m;
  if (kind == "metric-regularity") {
    m = mr_modulus(f, x, y, c.sched, c.grid);
  } else if (kind == "aubin") {
    m = aubin_modulus(f.inverse(), y, x, c.sched, c.grid);
  } else if (kind == "openness-rate") {
    m = openness_rate(f, x, y, c.sched, c.grid);
  } else {
    throw ValidationError("unknown modulus kind '" + kind + "'");
  }
  r = modulus_json(c, m, kind);
  c.evidence(kind + " of " + f.name() + " at (" + x.str() + ", " + y.str() + "): trace " + join(m.trace));
  return modulus_verdict(m);
}

std::string op_equivalence(Ctx& c, Json& r) {
  const PMF f = c.map("map", "F");
  const EquivalenceReport e = equivalence_check(f, c.num("x", "0"), c.num("y", "0"), c.tol(), c.sched, c.grid);
  r = Json{{"mr", modulus_json(c, e.mr, "metric-regularity")},
           {"aubin", modulus_json(c, e.aubin, "aubin")},
           {"openness", modulus_json(c, e.openness, "openness-rate")},
           {"detail", e.detail}};
  c.evidence("reg = " + e.mr.value.str() + ", lip = " + e.aubin.value.str() + ", rate = " + e.openness.value.str());
  return to_string(e.verdict);
}

std::string op_envelope(Ctx& c, Json& r) {
  const PMF f = c.map("map", "F");
  const Real x = c.num("x", "0"), y = c.num("y", "0");
  const EnvelopeValue v = lsc_envelope(f, x, y, c.sched, c.grid);
  c.trace("envelope", v.trace);
  r = Json{{"value", to_json(v.value)}, {"trace", to_json(v.trace)}, {"converged", v.converged},
           {"backend", to_string(v.backend)}};
  c.evidence("phi = " + v.value.str());
  return "measured";
}

std::string op_slope(Ctx& c, Json& r) {
  const PMF f = c.map("map", "F");
  const Real x = c.num("x", "0"), y = c.num("y", "0");
  const ScalarFunction phi = envelope_function(f, y);
  const SlopeEstimate s = strong_slope(phi, x, c.sched, c.grid);
  c.trace("slope", s.trace);
  r = Json{{"value", to_json(s.value)},   {"trace", to_json(s.trace)},       {"local_min", s.local_min},
           {"backend", to_string(s.backend)}, {"witness_ratio", to_json(s.witness_ratio)}};
  if (s.witness) {
    r["witness"] = to_json(*s.witness);
    c.witness("slope", {x, *s.witness}, s.witness_ratio);
  }
  if (!c.fl()) r["exact"] = to_json(phi.exact_slope(x));
  c.evidence("|grad phi|(" + x.str() + ") = " + s.value.str());
  return "measured";
}

std::string op_sum_check(Ctx& c, Json& r) {
  const PMF f = c.map("f", "F"), g = c.map("g", "G");
  const SumTheoremReport t = sum_theorem_verify(f, g, c.num("x", "0"), c.num("k", "0"), c.num("y", "0"),
                                                c.num("tau", "1"), c.num("lambda", "0"), c.sched, c.grid, c.tol());
  Json b{{"ran", t.b_ran}, {"passed", t.b_passed}, {"skip_reason", t.b_skip_reason}};
  if (t.sum_modulus) b["sum_modulus"] = modulus_json(c, *t.sum_modulus, "sum-modulus");
  Json cov{{"passed", t.c.passed}, {"required_rate", to_json(t.c.required_rate)}, {"min_rate", to_json(t.c.min_rate)}};
  if (t.c.witness) {
    const CoveringWitness& w = *t.c.witness;
    cov["witness"] = Json{{"x", to_json(w.x)}, {"k", to_json(w.k)}, {"z", to_json(w.z)}, {"rho", to_json(w.rho)},
                          {"rate", to_json(w.rate)}};
  }
  r = Json{{"bound", to_json(t.bound)},
           {"a",
            {{"passed", t.a_passed},
             {"f_modulus", modulus_json(c, t.f_modulus, "f-modulus")},
             {"g_lipschitz", modulus_json(c, t.g_lipschitz, "g-lipschitz")},
             {"e_modulus", modulus_json(c, t.e_modulus, "e-modulus")}}},
           {"b", std::move(b)},
           {"c", std::move(cov)},
           {"sum_standalone", modulus_json(c, t.sum_standalone, "sum-standalone")},
           {"stability", stability_json(c, t.stability)}};
  c.evidence("(a) reg E = " + t.e_modulus.value.str() + " against bound " + t.bound.str());
  c.evidence(t.b_ran ? "(b) reg(F+G) = " + t.sum_modulus->value.str() : "(b) skipped: " + t.b_skip_reason);
  c.evidence("(c) covering rate " + t.c.min_rate.str() + " against " + t.c.required_rate.str());
  if (!t.a_passed || !t.c.passed || (t.b_ran && !t.b_passed)) return "violated";
  if (!t.b_ran) return "inconclusive";
  return passed(true, !c.fl());
}

std::string op_sum_stability(Ctx& c, Json& r) {
  const PMF f = c.map("f", "F"), g = c.map("g", "G");
  const SumStabilityReport s = sum_stability_probe(f, g, c.num("x", "0"), c.num("y", "0"), c.num("z", "0"),
                                                   c.nums("eps", {"1/4"}), c.sched, c.grid);
  r = stability_json(c, s);
  if (s.witness)
    c.evidence("eps = " + s.witness->epsilon.str() + ", delta = " + s.witness->delta.str() + ": x = " +
               s.witness->x.str() + ", w = " + s.witness->w.str() + " does not decompose");
  if (s.shortcut_used) c.evidence("G is usc with a singleton value at the center");
  return to_string(s.verdict);
}

std::string op_closedness(Ctx& c, Json& r) {
  const PMF f = c.map("map", "F");
  const std::vector<Real> b = c.nums("region", {"-1", "1", "-1", "1"});
  if (b.size() != 4) throw ValidationError("region needs [x_lo, x_hi, y_lo, y_hi]");
  const ClosednessReport cr = graph_closedness_probe(f, Region{b[0], b[1], b[2], b[3]});
  r = Json{{"verdict", to_string(cr.verdict)}, {"boundaries_checked", cr.boundaries_checked},
           {"backend", to_string(cr.backend)}};
  if (cr.witness) {
    r["witness"] = to_json(std::vector<Real>{cr.witness->first, cr.witness->second});
    c.witness("closure-point", {cr.witness->first, cr.witness->second}, Real(0));
    c.evidence("(" + cr.witness->first.str() + ", " + cr.witness->second.str() + ") is a limit outside the graph");
  }
  return to_string(cr.verdict);
}

EpigraphicalMF epi(const Ctx& c, const char* lambda_default) {
  return EpigraphicalMF(c.map("f", "F"), c.map("g", "G"), c.num("lambda", lambda_default));
}

std::string op_epi_envelope(Ctx& c, Json& r) {
  const EpigraphicalMF e = epi(c, "1");
  const EpiEnvelopeReport rep = epi_envelope(e, c.num("x", "0"), c.num("k", "0"), c.num("y", "0"), c.sched, c.grid);
  c.trace("epi-envelope", rep.full.trace);
  r = Json{{"full", to_json(rep.full.value)}, {"trace", to_json(rep.full.trace)}, {"g_lsc", rep.g_lsc},
           {"agree", rep.agree},             {"discrepancy_flagged", rep.discrepancy_flagged}};
  r["reduced"] = rep.reduced ? to_json(*rep.reduced) : Json(nullptr);
  c.evidence("full = " + rep.full.value.str() + ", reduced = " + (rep.reduced ? rep.reduced->str() : "none"));
  if (rep.agree) return "agree";
  return rep.discrepancy_flagged ? "discrepancy-flagged" : "disagree";
}

std::string op_epi_modulus(Ctx& c, Json& r) {
  const EpigraphicalMF e = epi(c, "1");
  const ModulusReport m = epi_mr_modulus(e, c.num("x", "0"), c.num("k", "0"), c.num("y", "0"), c.sched, c.grid,
                                         c.params().value("use_envelope", false));
  r = modulus_json(c, m, "epi-modulus");
  c.evidence("reg E trace " + join(m.trace));
  return modulus_verdict(m);
}

std::string op_epi_slope(Ctx& c, Json& r) {
  const EpigraphicalMF e = epi(c, "1");
  const Real v = epi_envelope_slope(e, c.num("x", "0"), c.num("k", "0"), c.num("y", "0"), e.lambda());
  r = Json{{"value", to_json(v)}};
  c.evidence("|grad phi_E| = " + v.str());
  return "measured";
}

std::string op_zero_set(Ctx& c, Json& r) {
  const EpigraphicalMF e = epi(c, "1");
  const std::vector<Real> b = c.nums("box", {"-1", "1", "-1", "1", "-1", "1"});
  if (b.size() != 6) throw ValidationError("box needs six bounds");
  const ZeroSetReport z = epi_zero_set_check(e, Box3{b[0], b[1], b[2], b[3], b[4], b[5]}, c.grid);
  r = Json{{"verdict", to_string(z.verdict)}, {"points_checked", z.points_checked}, {"backend", to_string(z.backend)}};
  if (z.mismatch) {
    const ZeroSetMismatch& m = *z.mismatch;
    r["mismatch"] = Json{{"x", to_json(m.x)},     {"k", to_json(m.k)},     {"y", to_json(m.y)},
                         {"phi", to_json(m.phi)}, {"in_solution_set", m.in_solution_set}};
    c.witness("zero-set", {m.x, m.k, m.y}, m.phi);
  }
  c.evidence(std::to_string(z.points_checked) + " points checked");
  return to_string(z.verdict);
}

std::string op_counterexample(Ctx& c, Json& r) {
  const Real delta = c.num("delta", "1/10");
  const CounterexampleBundle b = paper_counterexample(delta);
  const ModulusReport m = mr_modulus(b.sum, Real(0), Real(0), c.sched, c.grid);
  r = Json{{"delta", to_json(b.delta)},
           {"x", to_json(b.x)},
           {"y", to_json(b.y)},
           {"dist_preimage", to_json(b.dist_preimage)},
           {"dist_image", to_json(b.dist_image)},
           {"ratio", to_json(b.ratio)},
           {"ratio_formula", b.ratio_formula},
           {"instability", witness_json(b.instability)},
           {"instability_verified", b.instability_verified},
           {"modulus", modulus_json(c, m, "metric-regularity")}};
  c.witness("counterexample", {b.x, b.y}, b.ratio);
  c.evidence("d(x, (F+G)^-1(y)) = " + b.dist_preimage.str());
  c.evidence("d(y, (F+G)(x)) = " + b.dist_image.str());
  c.evidence("ratio " + b.ratio_formula);
  c.evidence("reg(F+G) trace " + join(m.trace));
  switch (m.verdict) {
    case ModulusVerdict::irregular: return "not metrically regular";
    case ModulusVerdict::regular: return "metrically regular";
    case ModulusVerdict::inconclusive: break;
  }
  return "inconclusive";
}

std::string op_coderivative(Ctx& c, Json& r) {
  const PMF f = c.map("map", "F");
  const Real x = c.num("x", "0"), y = c.num("y", "0"), ystar = c.num("ystar", "1");
  const ConeKind kind = cone_kind_from_string(c.text("kind", "frechet"));
  const IntervalSet d = coderivative(f, x, y, ystar, kind);
  const PolyhedralUnion gph = graph_of(f);
  Json limiting = Json::array();
  for (const Cone& k : limiting_normal_cone(gph, {x, y})) limiting.push_back(k.str());
  r = Json{{"kind", to_string(kind)},
           {"value", to_json(d)},
           {"frechet_normal_cone", frechet_normal_cone(gph, {x, y}).str()},
           {"limiting_normal_cone", std::move(limiting)}};
  c.evidence("D*" + f.name() + "(" + x.str() + "|" + y.str() + ")(" + ystar.str() + ") = " + d.str());
  return "measured";
}

std::string op_hypothesis(Ctx& c, Json& r) {
  const Real k = c.num("k", "0");
  const Real z = c.params().contains("z") ? c.num("z", "0") : c.num("y", "0") - k;
  const HypothesisReport h = hypothesis_H_check(c.map("f", "F"), c.map("g", "G"), c.num("x", "0"), k, z);
  r = Json{{"holds", h.holds},
           {"via", h.via},
           {"f_at_zero", to_json(h.f_at_zero)},
           {"g_at_zero", to_json(h.g_at_zero)},
           {"qualification", to_json(h.qualification)},
           {"psnc", h.psnc}};
  for (const std::string& v : h.via) c.evidence(v);
  return h.holds ? "holds" : "fails";
}

std::string op_kernel(Ctx& c, Json& r) {
  const KernelReport k = kernel_condition_check(c.map("f", "F"), c.map("g", "G"), c.num("x", "0"), c.num("k", "0"),
                                                c.num("y", "0"));
  r = Json{{"verdict", to_string(k.verdict)},
           {"kernel", to_json(k.kernel)},
           {"psnc", k.psnc},
           {"qualification", k.qualification},
           {"sequential_condition", k.sequential_condition}};
  c.evidence("kernel = " + k.kernel.str());
  return to_string(k.verdict);
}

std::string op_slope_bound(Ctx& c, Json& r) {
  const PMF f = c.map("f", "F"), g = c.map("g", "G");
  const Real x = c.num("x", "0"), k = c.num("k", "0"), y = c.num("y", "1"), lambda = c.num("lambda", "1");
  const Real bound = coderivative_slope_bound(f, g, x, k, y, c.num("delta", "0"));
  const Real slope = epi_envelope_slope(EpigraphicalMF(f, g, lambda), x, k, y, lambda);
  r = Json{{"bound", to_json(bound)}, {"slope", to_json(slope)}};
  c.witness("slope-bound", {x, k, y}, bound);
  c.evidence("bound " + bound.str() + " against slope " + slope.str());
  return passed(approx_le(bound, slope, c.tol()), !c.fl());
}

std::string op_certify(Ctx& c, Json& r) {
  const ConstantsCertificate cc = certify_constants(c.parametric(), c.sched, c.grid, c.tol());
  r = certificate_json(c, cc);
  if (!cc.detail.empty()) c.evidence(cc.detail);
  return cc.certified ? "certified" : "not-certified";
}

Json slices_json(Ctx& c, const std::vector<ParamSlice>& slices) {
  Json out = Json::array();
  for (const ParamSlice& s : slices)
    out.push_back(Json{{"p", to_json(s.p)}, {"k", to_json(s.k)}, {"y", to_json(s.y)},
                       {"modulus", modulus_json(c, s.modulus, "slice p=" + s.p.str())}});
  return out;
}

std::string op_parametric_epi(Ctx& c, Json& r) {
  const ParametricEpiReport p = parametric_epi_mr_check(c.parametric(), c.sched, c.grid, c.tol());
  r = Json{{"bound", to_json(p.bound)},
           {"uniform", to_json(p.uniform)},
           {"slices", slices_json(c, p.slices)},
           {"certificate", certificate_json(c, p.certificate)}};
  c.evidence("uniform reg E_p = " + p.uniform.str() + " against " + p.bound.str());
  return to_string(p.verdict);
}

std::string op_solution_map(Ctx& c, Json& r) {
  const SolutionMapReport m = solution_map_lipschitz(c.parametric(), c.sched, c.grid, c.tol());
  r = Json{{"se_bound", to_json(m.se_bound)},
           {"se_lip", modulus_json(c, m.se_lip, "lip-se")},
           {"se_passed", m.se_passed},
           {"s_bound", to_json(m.s_bound)},
           {"s_passed", m.s_passed},
           {"s_skip_reason", m.s_skip_reason},
           {"stability", stability_json(c, m.stability)},
           {"certificate", certificate_json(c, m.certificate)}};
  r["s_lip"] = m.s_lip ? modulus_json(c, *m.s_lip, "lip-s") : Json(nullptr);
  c.evidence("lip S_E = " + m.se_lip.value.str() + " against " + m.se_bound.str());
  c.evidence(m.s_lip ? "lip S = " + m.s_lip->value.str() + " against " + m.s_bound.str()
                     : "lip S skipped: " + m.s_skip_reason);
  return to_string(m.verdict);
}

std::string op_robinson(Ctx& c, Json& r) {
  const RobinsonTransferReport t = robinson_transfer_check(c.parametric(), c.num("theta", "1"), c.sched, c.grid, c.tol());
  r = Json{{"m", to_json(t.m)},
           {"theta", to_json(t.theta)},
           {"localized_holds", t.localized_holds},
           {"localized_points", t.localized_points},
           {"stability", stability_json(c, t.stability)},
           {"robinson", modulus_json(c, t.robinson, "robinson")},
           {"bound", to_json(t.bound)},
           {"transfer_passed", t.transfer_passed},
           {"certificate", certificate_json(c, t.certificate)}};
  if (t.localized_witness) {
    const LocalizedParamWitness& w = *t.localized_witness;
    r["localized_witness"] = Json{{"x", to_json(w.x)}, {"p", to_json(w.p)}, {"lhs", to_json(w.lhs)}, {"rhs", to_json(w.rhs)}};
  }
  c.evidence("robinson modulus " + t.robinson.value.str() + " against " + t.bound.str());
  return to_string(t.verdict);
}

Json paravasys_witness(const ParavasysWitness& w) {
  return Json{{"x", to_json(w.x)},     {"p", to_json(w.p)},         {"k", to_json(w.k)},
              {"y", to_json(w.y)},     {"phi", to_json(w.phi)},     {"slope", to_json(w.slope)},
              {"distance", to_json(w.distance)}};
}

std::string op_paravasys(Ctx& c, Json& r) {
  const ParavasysReport p = paravasys_check(c.parametric(), c.num("m", "1"), c.num("gamma", "1"), c.sched, c.grid);
  r = Json{{"premise", to_string(p.premise)},
           {"conclusion", to_string(p.conclusion)},
           {"conclusion_checked", p.conclusion_checked},
           {"points_checked", p.points_checked}};
  if (p.premise_witness) {
    r["premise_witness"] = paravasys_witness(*p.premise_witness);
    c.witness("premise", {p.premise_witness->x, p.premise_witness->p}, p.premise_witness->slope);
  }
  if (p.conclusion_witness) r["conclusion_witness"] = paravasys_witness(*p.conclusion_witness);
  c.evidence("premise " + to_string(p.premise) + ", conclusion " + to_string(p.conclusion));
  if (p.premise == Verdict::violated) return "premise-fails";
  if (!p.conclusion_checked) return "inconclusive";
  return to_string(p.conclusion);
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h{
      {"certify", op_certify},
      {"closedness", op_closedness},
      {"coderivative", op_coderivative},
      {"counterexample", op_counterexample},
      {"envelope", op_envelope},
      {"epi-envelope", op_epi_envelope},
      {"epi-modulus", op_epi_modulus},
      {"epi-slope", op_epi_slope},
      {"equivalence", op_equivalence},
      {"hypothesis", op_hypothesis},
      {"kernel", op_kernel},
      {"modulus", op_modulus},
      {"parametric-epi", op_parametric_epi},
      {"paravasys", op_paravasys},
      {"robinson", op_robinson},
      {"slope", op_slope},
      {"slope-bound", op_slope_bound},
      {"solution-map", op_solution_map},
      {"sum-check", op_sum_check},
      {"sum-stability", op_sum_stability},
      {"zero-set", op_zero_set},
  };
  return h;
}

}  // namespace

OperationResult run_operation(const Scenario& s, const OperationSpec& op, const ScenarioConfig& cfg) {
  OperationResult out;
  out.op = op.op;
  out.params = op.params;
  out.expect = op.expect;
  const auto it = handlers().find(op.op);
  if (it == handlers().end()) throw UnknownOperation("unknown operation '" + op.op + "'");
  try {
    Ctx ctx(s, op, cfg, out);
    out.verdict = it->second(ctx, out.result);
  } catch (const Error& e) {
    out.verdict = e.code();
    out.result = Json{{"error", {{"code", e.code()}, {"message", e.what()}}}};
    out.evidence.push_back(std::string(e.code()) + ": " + e.what());
  } catch (const Json::exception& e) {
    out.verdict = "ParseError";
    out.result = Json{{"error", {{"code", "ParseError"}, {"message", e.what()}}}};
  }
  if (!op.expect) {
    out.status = intrinsic(out.verdict);
  } else if (*op.expect == out.verdict) {
    out.status = Outcome::pass;
  } else {
    const bool uncertain = out.verdict.rfind("inconclusive", 0) == 0 || out.result.contains("error");
    out.status = uncertain ? Outcome::inconclusive : Outcome::violation;
  }
  return out;
}

Report run_scenario(const ScenarioConfig& cfg, const RunOptions& opts) {
  cfg.validate();
  Report rep;
  rep.backend = cfg.backend;
  rep.tolerance = cfg.tolerance;
  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  for (std::size_t i = 0; i < cfg.scenarios.size(); ++i) {
    rep.entries.push_back(ScenarioResult{cfg.scenarios[i].name, {}});
    rep.entries.back().operations.resize(cfg.scenarios[i].operations.size());
    for (std::size_t j = 0; j < cfg.scenarios[i].operations.size(); ++j) tasks.emplace_back(i, j);
  }
  unsigned n = opts.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opts.threads;
  n = static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(1, tasks.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      const auto [i, j] = tasks[t];
      rep.entries[i].operations[j] = run_operation(cfg.scenarios[i], cfg.scenarios[i].operations[j], cfg);
    }
  };
  if (n == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  return rep;
}

}  // namespace vwb
