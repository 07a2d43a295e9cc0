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

#include "vwb/envelope.hpp"

#include "vwb/errors.hpp"

namespace vwb {

namespace {

// max(l_i - y, y - u_j, 0): distance from y to the cell section.
std::vector<Affine> gap_terms(const Cell& c, const Real& y) {
  std::vector<Affine> t;
  for (const Affine& l : c.lower) t.push_back(l.shifted(-y));
  for (const Affine& u : c.upper) t.push_back({-u.a, y - u.b});
  t.push_back({Real(0), Real(0)});
  return t;
}

Real zero_like(const Real& v) { return v.is_exact() ? Real(0) : Real::from_double(0.0); }

}  // namespace

Real envelope_exact(const PiecewiseMultifunction& f, const Real& x, const Real& y) {
  Real best = Real::inf();
  for (const Cell& c : f.cells()) {
    if (!c.x.closure_contains(x)) continue;
    best = min(best, max_of(gap_terms(c, y), x));
  }
  return best;
}

ScalarFunction envelope_function(const PiecewiseMultifunction& f, const Real& y) {
  std::vector<ScalarBranch> branches;
  for (const Cell& c : f.cells()) {
    ScalarBranch b{c.x.closure(), {}};
    for (const Affine& t : gap_terms(c, y)) b.terms.push_back(Quadratic::from_affine(t));
    branches.push_back(std::move(b));
  }
  return ScalarFunction(std::move(branches));
}

EnvelopeValue lsc_envelope(const PiecewiseMultifunction& f, const Real& x, const Real& y,
                           const NeighborhoodSchedule& sched, const GridSpec& grid) {
  grid.validate();
  if (!f.domain().contains(x)) throw OutOfDomain(f.name() + ": " + x.str() + " outside domain");
  EnvelopeValue out;
  out.backend = (f.is_exact() && x.is_exact() && y.is_exact()) ? Backend::rational : Backend::floating;
  for (const Real& r : sched.radii()) {
    const Range ball = Range::make(x - r, x + r, true, true);
    Real best = Real::inf();
    for (const Cell& c : f.cells()) {
      const Range part = c.x.intersect(ball).intersect(f.domain());
      if (part.empty()) continue;
      best = min(best, minimize_max_affine(gap_terms(c, y), part.lo, part.hi).value);
    }
    out.trace.push_back({r, best});
  }
  out.value = envelope_exact(f, x, y);
  out.trace.push_back({zero_like(out.value), out.value});
  out.converged = true;
  return out;
}

SlopeEstimate strong_slope(const ScalarFunction& f, const Real& x, const NeighborhoodSchedule& sched,
                           const GridSpec& grid) {
  grid.validate();
  SlopeEstimate out;
  out.backend = f.is_exact() && x.is_exact() ? Backend::rational : Backend::floating;
  const Real fx = f(x);
  out.value = f.exact_slope(x);
  out.local_min = out.value.sign() == 0;
  if (!fx.is_finite()) {
    for (const Real& r : sched.radii()) out.trace.push_back({r, Real::inf()});
    return out;
  }
  const std::vector<Real> bps = f.breakpoints();
  for (const Real& r : sched.radii()) {
    Real best = zero_like(fx);
    std::optional<Real> arg;
    for (const Real& u : ball_samples(x, r, grid, 0, bps)) {
      if (u == x) continue;
      const Real fu = f(u);
      if (!fu.is_finite()) continue;
      const Real ratio = (fx - fu) / abs(x - u);
      if (ratio > best) {
        best = ratio;
        arg = u;
      }
    }
    out.trace.push_back({r, best});
    out.witness = arg;
    out.witness_ratio = best;
  }
  return out;
}

ErrorBoundReport error_bound_constant(const ParamFunction& f, const Real& xbar, const Real& pbar,
                                      const NeighborhoodSchedule& sched, const GridSpec& grid) {
  grid.validate();
  if (f(xbar, pbar).sign() > 0) {
    throw PreconditionViolated("center is not feasible: f(xbar, pbar) > 0");
  }
  ErrorBoundReport out;
  out.backend = f.is_exact() && xbar.is_exact() && pbar.is_exact() ? Backend::rational : Backend::floating;
  for (const Real& r : sched.radii()) {
    Real best = zero_like(r);
    std::vector<std::pair<Real, Real>> wit;
    for (const Real& p : ball_samples(pbar, r, grid, 1)) {
      const IntervalSet s = f.sublevel(p);
      if (s.empty()) throw EmptySolutionSet("S(p) is empty at p = " + p.str());
      for (const Real& x : ball_samples(xbar, r, grid, 0, s.endpoints())) {
        const Real viol = positive_part(f(x, p));
        if (viol.sign() == 0) continue;
        const Real ratio = s.dist(x) / viol;
        if (ratio > best) {
          best = ratio;
          wit.clear();
        }
        if (ratio == best && ratio.sign() > 0) wit.emplace_back(x, p);
      }
    }
    out.trace.push_back({r, best});
    out.witnesses = std::move(wit);
    out.radius = r;
  }
  out.verdict = classify_trace(out.trace);
  out.constant = out.verdict == ModulusVerdict::irregular ? Real::inf() : out.trace.back().value;
  return out;
}

SlopeCriterionReport slope_criterion_probe(const ParametricMultifunction& family, const Real& xbar,
                                           const Real& ybar, const Real& pbar, const Real& tau,
                                           const Real& gamma, const NeighborhoodSchedule& sched,
                                           const GridSpec& grid) {
  grid.validate();
  if (tau.sign() <= 0 || gamma.sign() <= 0) throw PreconditionViolated("tau and gamma must be positive");
  if (!family.image(xbar, pbar).contains(ybar)) {
    throw PointNotOnGraph("ybar is not in F(xbar, pbar)");
  }
  SlopeCriterionReport out;
  out.backend = family.is_exact() && xbar.is_exact() && ybar.is_exact() ? Backend::rational
                                                                         : Backend::floating;
  const Real threshold = Real(1) / tau;
  const std::vector<Real> radii = sched.radii();
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const Real& r = radii[k];
    std::size_t bad = 0;
    for (const Real& p : ball_samples(pbar, r, grid, 2, family.p_breakpoints())) {
      const PiecewiseMultifunction slice = family.slice_p(p);
      const std::vector<Real> xs = ball_samples(xbar, r, grid, 0, slice.breakpoints());
      for (const Real& y : ball_samples(ybar, r, grid, 1)) {
        const ScalarFunction phi = envelope_function(slice, y);
        for (const Real& x : xs) {
          if (!slice.domain().contains(x)) continue;
          const Real v = phi(x);
          if (!(v.sign() > 0 && v < gamma)) continue;
          ++out.points_checked;
          const Real s = phi.exact_slope(x);
          if (s < threshold) {
            ++bad;
            if (k + 1 == radii.size() && !out.witness) out.witness = SlopeWitness{x, y, p, v, s};
          }
        }
      }
    }
    out.violations_per_radius.push_back(bad);
  }
  if (out.witness) {
    out.verdict = Verdict::violated;
  } else {
    out.verdict = out.backend == Backend::rational ? Verdict::holds : Verdict::inconclusive_pass;
  }
  return out;
}

}  // namespace vwb
