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

#include "vwb/variational.hpp"

#include <algorithm>

#include "vwb/errors.hpp"

namespace vwb {

namespace {

Real zero_like(bool exact) { return exact ? Real(0) : Real::from_double(0.0); }

bool le(const Real& a, const Real& b, bool exact, double tol = kFloatTolerance) {
  return exact ? a <= b : approx_le(a, b, tol);
}

std::optional<Real> nearest(const IntervalSet& s, const Real& t) {
  std::optional<Real> best;
  for (const Interval& iv : s.intervals()) {
    const Real c = t < iv.lo ? iv.lo : (t > iv.hi ? iv.hi : t);
    if (!best || abs(c - t) < abs(*best - t)) best = c;
  }
  return best;
}

bool scenario_exact(const ParametricScenario& s) {
  return s.f.is_exact() && s.g.is_exact() && s.xbar.is_exact() && s.pbar.is_exact() && s.kbar.is_exact();
}

void require_certified(const ConstantsCertificate& c) {
  if (!c.certified) throw PreconditionViolated("constants not certified: " + c.detail);
}

std::vector<Real> p_grid(const ParametricScenario& s, const Real& r, const GridSpec& grid) {
  std::vector<Real> out;
  for (const Real& p : ball_samples(s.pbar, r, grid, 1, s.g.p_breakpoints())) {
    if (s.g.p_domain().contains(p)) out.push_back(p);
  }
  return out;
}

// Running supremum with the first witness that attains it.
struct Sup {
  Real best;
  std::vector<ModulusWitness> witnesses;
  std::size_t count = 0;

  void offer(const Real& v, std::vector<Real> point) {
    ++count;
    if (v > best) {
      best = v;
      witnesses.clear();
    }
    if (v == best && v.sign() > 0 && witnesses.size() < 16) witnesses.push_back({std::move(point), v});
  }
};

void finish(ModulusReport& rep) {
  rep.verdict = classify_trace(rep.trace);
  rep.value = rep.verdict == ModulusVerdict::irregular ? Real::inf() : rep.trace.back().value;
}

SumStabilityReport stability_at_center(const ParametricScenario& s, const NeighborhoodSchedule& sched,
                                       const GridSpec& grid) {
  return sum_stability_probe(s.f, s.g.slice_p(s.pbar), s.xbar, -s.kbar, s.kbar,
                             {Real::rational(1, 4), Real::rational(1, 8)}, sched, grid);
}

// Points of S_E(y) near (xbar, kbar): sampled x per cell, section ends and grid k.
std::vector<std::pair<Real, Real>> solution_points(const std::vector<Cell>& cells, const Real& xbar,
                                                   const Real& kbar, const Real& r, const GridSpec& grid) {
  std::vector<std::pair<Real, Real>> out;
  for (const Cell& c : cells) {
    for (const Real& x : ball_samples(xbar, r, grid, 0, c.breakpoints())) {
      const auto sec = c.section(x);
      if (!sec) continue;
      std::vector<Real> ends;
      if (sec->lo.is_finite()) ends.push_back(sec->lo);
      if (sec->hi.is_finite()) ends.push_back(sec->hi);
      for (const Real& k : ball_samples(kbar, r, grid, 2, ends)) {
        if (sec->contains(k)) out.emplace_back(x, k);
      }
    }
  }
  return out;
}

}  // namespace

Real ParametricScenario::bound() const {
  if (tau.sign() <= 0 || lambda.sign() < 0 || gamma.sign() < 0) {
    throw PreconditionViolated("tau must be positive, lambda and gamma nonnegative");
  }
  if (!(tau * lambda < Real(1))) throw PreconditionViolated("tau * lambda >= 1");
  return Real(1) / (Real(1) / tau - lambda);
}

void ParametricScenario::validate() const {
  bound();
  if (!g.image(xbar, pbar).contains(kbar)) throw PointNotOnGraph("kbar is not in G(xbar, pbar)");
  if (!f.image(xbar).contains(-kbar)) throw PointNotOnGraph("-kbar is not in F(xbar)");
}

ConstantsCertificate certify_constants(const ParametricScenario& s, const NeighborhoodSchedule& sched,
                                       const GridSpec& grid, double tol) {
  s.validate();
  ConstantsCertificate c;
  c.f_modulus = mr_modulus(s.f, s.xbar, -s.kbar, sched, grid);
  c.g_x = pl_uniform_modulus(s.g, s.xbar, s.pbar, s.kbar, UniformWrt::x_uniform_in_p, sched, grid);
  c.g_p = pl_uniform_modulus(s.g, s.xbar, s.pbar, s.kbar, UniformWrt::p_uniform_in_x, sched, grid);
  auto check = [&](const ModulusReport& m, const Real& declared, const char* what) {
    if (m.verdict == ModulusVerdict::regular && approx_le(m.value, declared, tol)) return;
    if (!c.detail.empty()) c.detail += "; ";
    c.detail += std::string(what) + " measured " + m.value.str() + " > " + declared.str();
  };
  check(c.f_modulus, s.tau, "tau");
  check(c.g_x, s.lambda, "lambda");
  check(c.g_p, s.gamma, "gamma");
  c.certified = c.detail.empty();
  return c;
}

ParametricEpiReport parametric_epi_mr_check(const ParametricScenario& s, const NeighborhoodSchedule& sched,
                                            const GridSpec& grid, double tol) {
  ParametricEpiReport rep;
  rep.bound = s.bound();
  rep.certificate = certify_constants(s, sched, grid, tol);
  require_certified(rep.certificate);
  const bool exact = scenario_exact(s);
  rep.uniform = zero_like(exact);
  bool bad = false;
  for (const Real& p : p_grid(s, sched.r0, grid)) {
    const PiecewiseMultifunction slice = s.g.slice_p(p);
    const auto k = nearest(slice.image_or_empty(s.xbar), s.kbar);
    if (!k) continue;
    const auto y = nearest(s.f.image_or_empty(s.xbar).translate(*k), Real(0));
    if (!y) continue;
    const EpigraphicalMF e(s.f, slice, s.lambda);
    ParamSlice ps{p, *k, *y, epi_mr_modulus(e, s.xbar, *k, *y, sched, grid)};
    if (ps.modulus.verdict != ModulusVerdict::regular) bad = true;
    rep.uniform = max(rep.uniform, ps.modulus.value);
    rep.slices.push_back(std::move(ps));
  }
  if (rep.slices.empty()) throw EmptySolutionSet("no p-slice meets the center");
  if (bad || !approx_le(rep.uniform, rep.bound, tol)) {
    rep.verdict = Verdict::violated;
  } else {
    rep.verdict = exact ? Verdict::holds : Verdict::inconclusive_pass;
  }
  return rep;
}

SolutionMapReport solution_map_lipschitz(const ParametricScenario& s, const NeighborhoodSchedule& sched,
                                         const GridSpec& grid, double tol) {
  SolutionMapReport rep;
  const Real bound = s.bound();
  rep.certificate = certify_constants(s, sched, grid, tol);
  require_certified(rep.certificate);
  const bool exact = scenario_exact(s);
  rep.se_bound = s.gamma + (s.gamma + Real(1)) * bound;
  rep.s_bound = s.gamma * bound;

  rep.se_lip.kind = ModulusKind::aubin;
  rep.se_lip.backend = exact ? Backend::rational : Backend::floating;
  for (const Real& r : sched.radii()) {
    struct Slot {
      Real y, p;
      std::vector<Cell> cells;
    };
    std::vector<Slot> slots;
    for (const Real& p : p_grid(s, r, grid)) {
      const EpigraphicalMF e(s.f, s.g.slice_p(p), Real(1));
      for (const Real& y : ball_samples(Real(0), r, grid, 0)) slots.push_back({y, p, e.solution_cells(y)});
    }
    Sup sup{zero_like(exact), {}, 0};
    for (const Slot& from : slots) {
      for (const auto& [x, k] : solution_points(from.cells, s.xbar, s.kbar, r, grid)) {
        for (const Slot& to : slots) {
          const Real step = max(abs(from.y - to.y), abs(from.p - to.p));
          if (step.sign() == 0) continue;
          const Real d = product_distance_to_cells(to.cells, x, k, Real(1));
          sup.offer(d / step, {x, k, from.y, from.p, to.y, to.p});
        }
      }
    }
    rep.se_lip.trace.push_back({r, sup.best});
    rep.se_lip.samples += sup.count;
    rep.se_lip.witnesses = std::move(sup.witnesses);
  }
  finish(rep.se_lip);
  rep.se_passed = rep.se_lip.verdict == ModulusVerdict::regular && approx_le(rep.se_lip.value, rep.se_bound, tol);

  rep.stability = stability_at_center(s, sched, grid);
  if (rep.stability.verdict == StabilityVerdict::stable) {
    ModulusReport m;
    m.kind = ModulusKind::lipschitz_p;
    m.backend = rep.se_lip.backend;
    for (const Real& r : sched.radii()) {
      const std::vector<Real> ps = p_grid(s, r, grid);
      std::vector<IntervalSet> sols;
      for (const Real& p : ps) sols.push_back(robinson_solution_set(s.f, s.g, p));
      Sup sup{zero_like(exact), {}, 0};
      for (std::size_t i = 0; i < ps.size(); ++i) {
        for (const Real& x : ball_samples(s.xbar, r, grid, 0, sols[i].endpoints())) {
          if (!sols[i].contains(x)) continue;
          for (std::size_t j = 0; j < ps.size(); ++j) {
            if (i == j) continue;
            sup.offer(sols[j].dist(x) / abs(ps[i] - ps[j]), {x, ps[i], ps[j]});
          }
        }
      }
      m.trace.push_back({r, sup.best});
      m.samples += sup.count;
      m.witnesses = std::move(sup.witnesses);
    }
    finish(m);
    rep.s_passed = m.verdict == ModulusVerdict::regular && approx_le(m.value, rep.s_bound, tol);
    rep.s_lip = std::move(m);
  } else {
    rep.s_skip_reason = "sum-stability absent";
  }
  if (!rep.se_passed || (rep.s_lip && !rep.s_passed)) {
    rep.verdict = Verdict::violated;
  } else {
    rep.verdict = exact ? Verdict::holds : Verdict::inconclusive_pass;
  }
  return rep;
}

RobinsonTransferReport robinson_transfer_check(const ParametricScenario& s, const Real& theta,
                                               const NeighborhoodSchedule& sched, const GridSpec& grid,
                                               double tol) {
  if (theta.sign() <= 0) throw ValidationError("theta must be positive");
  RobinsonTransferReport rep;
  rep.bound = s.bound();
  rep.m = Real(1) / rep.bound;
  rep.theta = theta;
  rep.certificate = certify_constants(s, sched, grid, tol);
  require_certified(rep.certificate);
  rep.stability = stability_at_center(s, sched, grid);
  if (rep.stability.verdict != StabilityVerdict::stable) throw PreconditionViolated("sum-stability absent");
  const bool exact = scenario_exact(s);

  const Real r = sched.radii().back();
  Real worst = Real::neg_inf();
  for (const Real& p : p_grid(s, r, grid)) {
    const PiecewiseMultifunction slice = s.g.slice_p(p);
    const IntervalSet sol = robinson_solution_set(s.f, s.g, p);
    for (const Real& x : ball_samples(s.xbar, r, grid, 0, slice.breakpoints())) {
      if (!slice.domain().contains(x) || !s.f.domain().contains(x)) continue;
      IntervalSet gv = slice.image_or_empty(x);
      if (theta.is_finite()) gv = gv.clip(s.kbar - theta, s.kbar + theta);
      const Real rhs = minkowski_sum(s.f.image_or_empty(x), gv).dist(Real(0));
      if (!rhs.is_finite()) continue;
      const Real lhs = rep.m * sol.dist(x);
      ++rep.localized_points;
      if (le(lhs, rhs, exact)) continue;
      if (lhs - rhs > worst) {
        worst = lhs - rhs;
        rep.localized_witness = LocalizedParamWitness{x, p, lhs, rhs};
      }
    }
  }
  rep.localized_holds = !rep.localized_witness;
  rep.robinson = robinson_modulus(s.f, s.g, s.xbar, s.pbar, sched, grid);
  rep.transfer_passed =
      rep.robinson.verdict == ModulusVerdict::regular && approx_le(rep.robinson.value, rep.bound, tol);
  if (!rep.localized_holds || !rep.transfer_passed) {
    rep.verdict = Verdict::violated;
  } else {
    rep.verdict = exact ? Verdict::holds : Verdict::inconclusive_pass;
  }
  return rep;
}

ParavasysReport paravasys_check(const ParametricScenario& s, const Real& m, const Real& gamma,
                                const NeighborhoodSchedule& sched, const GridSpec& grid) {
  if (m.sign() <= 0 || gamma.sign() <= 0) throw ValidationError("m and gamma must be positive");
  s.validate();
  ParavasysReport rep;
  const bool exact = scenario_exact(s) && m.is_exact() && gamma.is_exact();
  const Real r = sched.r0;
  const Real one(1);
  std::optional<ParavasysWitness> slope_low;
  std::optional<ParavasysWitness> dist_high;
  for (const Real& p : p_grid(s, r, grid)) {
    const PiecewiseMultifunction slice = s.g.slice_p(p);
    const EpigraphicalMF e(s.f, slice, one);
    std::vector<Real> xbps = s.f.breakpoints();
    for (const Real& b : slice.breakpoints()) xbps.push_back(b);
    const std::vector<Real> ys = ball_samples(Real(0), r, grid, 2);
    std::vector<std::vector<Cell>> sol;
    for (const Real& y : ys) sol.push_back(e.solution_cells(y));
    for (const Real& x : ball_samples(s.xbar, r, grid, 0, xbps)) {
      if (!slice.domain().contains(x)) continue;
      const IntervalSet gx = slice.image_or_empty(x);
      for (const Real& k : ball_samples(s.kbar, r, grid, 1, gx.endpoints())) {
        if (!gx.contains(k)) continue;
        for (std::size_t j = 0; j < ys.size(); ++j) {
          const Real& y = ys[j];
          const Real phi = epi_envelope_exact(e, x, k, y);
          if (!(phi.sign() > 0 && phi < gamma)) continue;
          ++rep.points_checked;
          const Real slope = epi_envelope_slope(e, x, k, y, one);
          const Real dist = product_distance_to_cells(sol[j], x, k, one);
          const ParavasysWitness w{x, p, k, y, phi, slope, dist};
          if (!le(m, slope, exact) && (!slope_low || slope < slope_low->slope)) slope_low = w;
          const Real excess = m * dist - phi;
          if (!le(m * dist, phi, exact) && (!dist_high || excess > m * dist_high->distance - dist_high->phi)) {
            dist_high = w;
          }
        }
      }
    }
  }
  rep.premise_witness = slope_low;
  rep.premise = slope_low ? Verdict::violated : (exact ? Verdict::holds : Verdict::inconclusive_pass);
  rep.conclusion_checked = !slope_low;
  if (rep.conclusion_checked) {
    rep.conclusion_witness = dist_high;
    rep.conclusion = dist_high ? Verdict::violated : (exact ? Verdict::holds : Verdict::inconclusive_pass);
  }
  return rep;
}

}  // namespace vwb
