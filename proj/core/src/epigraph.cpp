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

#include "vwb/epigraph.hpp"

#include <algorithm>
#include <tuple>

#include "vwb/errors.hpp"

namespace vwb {

namespace {

Real zero_like(bool exact) { return exact ? Real(0) : Real::from_double(0.0); }

bool le(const Real& a, const Real& b, bool exact) { return exact ? a <= b : approx_le(a, b); }
bool eq(const Real& a, const Real& b, bool exact) { return exact ? a == b : approx_equal(a, b); }

// u |-> y - a(u) for each a.
std::vector<Affine> reflect(const std::vector<Affine>& v, const Real& y) {
  std::vector<Affine> out;
  out.reserve(v.size());
  for (const Affine& a : v) out.push_back({-a.a, y - a.b});
  return out;
}

std::vector<Affine> with(std::vector<Affine> v, const Affine& extra) {
  v.push_back(extra);
  return v;
}

Affine constant(const Real& c) { return {Real(0), c}; }

Real interval_gap(const Real& t, const Interval& s) {
  if (t < s.lo) return s.lo - t;
  if (t > s.hi) return t - s.hi;
  return Real(0);
}

// d((x, k), cell) in the product metric.
Real distance_to_cell(const Cell& c, const Real& x, const Real& k, const Real& lambda) {
  if (lambda.sign() == 0) {
    const auto level = Cell::make(c.x, with(c.lower, constant(k)), with(c.upper, constant(k)));
    if (!level) return Real::inf();
    const Range r = level->x.closure();
    if (x < r.lo) return r.lo - x;
    if (x > r.hi) return x - r.hi;
    return Real(0);
  }
  std::vector<Affine> terms{{Real(1), -x}, {Real(-1), x}};
  for (const Affine& l : c.lower) terms.push_back({l.a / lambda, (l.b - k) / lambda});
  for (const Affine& h : c.upper) terms.push_back({-h.a / lambda, (k - h.b) / lambda});
  const Range r = c.x.closure();
  return minimize_max_affine(terms, r.lo, r.hi).value;
}

std::vector<Real> merged(std::vector<Real> a, const std::vector<Real>& b) {
  a.insert(a.end(), b.begin(), b.end());
  sort_unique(a);
  return a;
}

std::vector<Real> evenly(const Real& lo, const Real& hi, int n) {
  std::vector<Real> out;
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * Real(i) / Real(n - 1));
  return out;
}

// Sets as lists of ranges whose ends may be open.
using Ranges = std::vector<Range>;

Ranges to_ranges(const IntervalSet& s) {
  Ranges out;
  for (const Interval& iv : s.intervals()) out.push_back(Range::make(iv.lo, iv.hi, false, false));
  return out;
}

Ranges clip_open(const Ranges& s, const Real& c, const Real& r) {
  const Range ball = Range::make(c - r, c + r, true, true);
  Ranges out;
  for (const Range& p : s) {
    const Range q = p.intersect(ball);
    if (!q.empty()) out.push_back(q);
  }
  return out;
}

Ranges sum_ranges(const Ranges& a, const Ranges& b) {
  Ranges out;
  for (const Range& p : a) {
    for (const Range& q : b) out.push_back(Range::make(p.lo + q.lo, p.hi + q.hi, p.lo_open || q.lo_open, p.hi_open || q.hi_open));
  }
  return out;
}

Ranges subtract(const Ranges& a, const Ranges& d) {
  Ranges cur = a;
  for (const Range& cut : d) {
    Ranges next;
    for (const Range& p : cur) {
      if (p.intersect(cut).empty()) {
        next.push_back(p);
        continue;
      }
      const Range left = p.intersect(Range::make(Real::neg_inf(), cut.lo, true, !cut.lo_open));
      const Range right = p.intersect(Range::make(cut.hi, Real::inf(), !cut.hi_open, true));
      if (cut.lo.is_finite() && !left.empty()) next.push_back(left);
      if (cut.hi.is_finite() && !right.empty()) next.push_back(right);
    }
    cur = std::move(next);
  }
  return cur;
}

bool ranges_contain(const Ranges& s, const Real& w) {
  return std::any_of(s.begin(), s.end(), [&](const Range& r) { return r.contains(w); });
}

Real point_in(const Range& r) {
  if (r.lo == r.hi) return r.lo;
  if (r.lo.is_finite() && r.hi.is_finite()) return midpoint(r.lo, r.hi);
  if (r.lo.is_finite()) return r.lo + Real(1);
  if (r.hi.is_finite()) return r.hi - Real(1);
  return Real(0);
}

struct StabilityCandidate {
  Real x, w;
  bool both_nonempty;
  bool grid_w;
};

}  // namespace

Real product_distance_to_cells(const std::vector<Cell>& cells, const Real& x, const Real& k, const Real& lambda) {
  Real best = Real::inf();
  for (const Cell& c : cells) best = min(best, distance_to_cell(c, x, k, lambda));
  return best;
}

Real ProductMetric::operator()(const Real& x, const Real& k, const Real& u, const Real& z) const {
  const Real du = abs(x - u);
  const Real dz = abs(k - z);
  if (lambda.sign() == 0) return dz.sign() == 0 ? du : Real::inf();
  return max(du, dz / lambda);
}

EpigraphicalMF::EpigraphicalMF(PiecewiseMultifunction f, PiecewiseMultifunction g, Real lambda)
    : f_(std::move(f)), g_(std::move(g)), lambda_(std::move(lambda)) {
  if (lambda_.sign() < 0 || !lambda_.is_finite()) throw ValidationError("lambda must be a nonnegative real");
}

bool EpigraphicalMF::on_graph_of_g(const Real& x, const Real& k) const {
  return g_.domain().contains(x) && g_.image_or_empty(x).contains(k);
}

IntervalSet EpigraphicalMF::value(const Real& x, const Real& k) const {
  if (!on_graph_of_g(x, k) || !f_.domain().contains(x)) return {};
  return f_.image_or_empty(x).translate(k);
}

bool EpigraphicalMF::g_lsc_at(const Real& x, const Real& k) const {
  if (!on_graph_of_g(x, k)) return false;
  for (int side : {-1, 1}) {
    const bool domain_extends = side < 0 ? g_.domain().lo < x : x < g_.domain().hi;
    if (!domain_extends) continue;
    IntervalSet limits;
    bool any = false;
    for (const Cell& c : g_.cells()) {
      const bool extends = side < 0 ? c.x.extends_left_of(x) : c.x.extends_right_of(x);
      if (!extends) continue;
      any = true;
      if (auto s = c.closure_section(x)) limits = limits.unite(IntervalSet::closed(s->lo, s->hi));
    }
    if (!any || !limits.contains(k)) return false;
  }
  return true;
}

std::vector<Cell> EpigraphicalMF::solution_cells(const Real& y) const {
  std::vector<Cell> out;
  for (const Cell& a : f_.cells()) {
    for (const Cell& c : g_.cells()) {
      const Range r = a.x.intersect(c.x);
      if (r.empty()) continue;
      std::vector<Affine> lower = c.lower;
      for (const Affine& t : reflect(a.upper, y)) lower.push_back(t);
      std::vector<Affine> upper = c.upper;
      for (const Affine& t : reflect(a.lower, y)) upper.push_back(t);
      if (auto cell = Cell::make(r, lower, upper)) out.push_back(*cell);
    }
  }
  return out;
}

bool EpigraphicalMF::in_solution_set(const Real& x, const Real& k, const Real& y) const {
  return value(x, k).contains(y);
}

Real EpigraphicalMF::solution_distance(const Real& x, const Real& k, const Real& y) const {
  return product_distance_to_cells(solution_cells(y), x, k, lambda_);
}

EpigraphicalMF build_epigraphical(const PiecewiseMultifunction& f, const PiecewiseMultifunction& g,
                                  const Real& lambda, const Region& region) {
  for (const PiecewiseMultifunction* m : {&f, &g}) {
    const ClosednessReport rep = graph_closedness_probe(*m, region);
    if (rep.verdict == ClosedVerdict::violation) {
      throw NotClosed(m->name() + " is not closed: limit point (" + rep.witness->first.str() + ", " +
                      rep.witness->second.str() + ") is missing");
    }
  }
  return EpigraphicalMF(f, g, lambda);
}

Real epi_envelope_exact(const EpigraphicalMF& e, const Real& x, const Real& k, const Real& y) {
  if (!e.on_graph_of_g(x, k)) return Real::inf();
  Real best = Real::inf();
  for (const Cell& a : e.f().cells()) {
    if (!a.x.closure_contains(x)) continue;
    const auto fa = a.closure_section(x);
    if (!fa) continue;
    for (const Cell& c : e.g().cells()) {
      const auto part = c.restricted(a.x);
      if (!part) continue;
      const auto sec = part->closure_section(x);
      if (!sec || !sec->contains(k)) continue;
      best = min(best, interval_gap(y - k, *fa));
    }
  }
  return best;
}

EpiEnvelopeReport epi_envelope(const EpigraphicalMF& e, const Real& x, const Real& k, const Real& y,
                               const NeighborhoodSchedule& sched, const GridSpec& grid) {
  grid.validate();
  EpiEnvelopeReport rep;
  const bool exact = e.is_exact() && x.is_exact() && k.is_exact() && y.is_exact();
  rep.full.backend = exact ? Backend::rational : Backend::floating;
  for (const Real& r : sched.radii()) {
    Real best = Real::inf();
    const Range ball = Range::make(x - r, x + r, false, false);
    for (const Cell& a : e.f().cells()) {
      for (const Cell& c : e.g().cells()) {
        const Range dom = a.x.intersect(c.x).intersect(ball);
        if (dom.empty()) continue;
        const auto cb = Cell::make(dom, with(c.lower, constant(k - r)), with(c.upper, constant(k + r)));
        if (!cb) continue;
        // d(y - v, F_a(u)) minimized over v in the clipped G-section.
        std::vector<Affine> terms{constant(Real(0))};
        for (const Affine& lf : a.lower) {
          for (const Affine& l : cb->lower) terms.push_back({lf.a + l.a, lf.b + l.b - y});
        }
        for (const Affine& uf : a.upper) {
          for (const Affine& u : cb->upper) terms.push_back({-(u.a + uf.a), y - u.b - uf.b});
        }
        const Range cr = cb->x.closure();
        best = min(best, minimize_max_affine(terms, cr.lo, cr.hi).value);
      }
    }
    rep.full.trace.push_back({r, best});
  }
  rep.full.value = epi_envelope_exact(e, x, k, y);
  rep.full.trace.push_back({zero_like(rep.full.value.is_exact()), rep.full.value});
  rep.full.converged = true;
  rep.g_lsc = e.g_lsc_at(x, k);
  if (e.on_graph_of_g(x, k)) rep.reduced = envelope_exact(e.f(), x, y - k);
  rep.agree = !rep.reduced || eq(rep.full.value, *rep.reduced, exact);
  rep.discrepancy_flagged = !rep.agree && !rep.g_lsc;
  return rep;
}

Real epi_solution_distance(const EpigraphicalMF& e, const Real& x, const Real& k, const Real& y) {
  return e.solution_distance(x, k, y);
}

Real epi_envelope_slope(const EpigraphicalMF& e, const Real& x, const Real& k, const Real& y,
                        const Real& lambda) {
  if (!e.on_graph_of_g(x, k)) return Real::inf();
  const Real phi = epi_envelope_exact(e, x, k, y);
  struct Grad {
    Real du, dv;
  };
  Real best = zero_like(phi.is_exact());
  for (const Cell& a : e.f().cells()) {
    const auto fa = a.closure_section(x);
    if (!fa) continue;
    for (const Cell& c : e.g().cells()) {
      const auto part = c.restricted(a.x);
      if (!part) continue;
      const auto sec = part->closure_section(x);
      if (!sec || !sec->contains(k)) continue;
      if (interval_gap(y - k, *fa) != phi) continue;
      // Active terms of max(lf(u) + v - y, y - v - uf(u), 0).
      std::vector<Grad> active;
      if (phi.sign() == 0) active.push_back({Real(0), Real(0)});
      for (const Affine& lf : a.lower) {
        if (lf(x) + k - y == phi) active.push_back({lf.a, Real(1)});
      }
      for (const Affine& uf : a.upper) {
        if (y - k - uf(x) == phi) active.push_back({-uf.a, Real(-1)});
      }
      // Tangent cone of the branch domain: n . d <= 0.
      std::vector<Grad> cone;
      if (part->x.lo == x) cone.push_back({Real(-1), Real(0)});
      if (part->x.hi == x) cone.push_back({Real(1), Real(0)});
      for (const Affine& l : part->lower) {
        if (l(x) == k) cone.push_back({l.a, Real(-1)});
      }
      for (const Affine& h : part->upper) {
        if (h(x) == k) cone.push_back({-h.a, Real(1)});
      }
      // Edges of the unit sphere, d(s) = base + s * step, s in [-1, 1].
      std::vector<std::pair<Grad, Grad>> edges;
      if (lambda.sign() == 0) {
        edges = {{{Real(1), Real(0)}, {Real(0), Real(0)}}, {{Real(-1), Real(0)}, {Real(0), Real(0)}}};
      } else {
        edges = {{{Real(1), Real(0)}, {Real(0), lambda}},
                 {{Real(-1), Real(0)}, {Real(0), lambda}},
                 {{Real(0), lambda}, {Real(1), Real(0)}},
                 {{Real(0), -lambda}, {Real(1), Real(0)}}};
      }
      for (const auto& [base, step] : edges) {
        Real lo(-1);
        Real hi(1);
        bool feasible = true;
        for (const Grad& n : cone) {
          const Real alpha = n.du * base.du + n.dv * base.dv;
          const Real beta = n.du * step.du + n.dv * step.dv;
          if (beta.sign() == 0) {
            if (alpha.sign() > 0) feasible = false;
          } else if (beta.sign() > 0) {
            hi = min(hi, -alpha / beta);
          } else {
            lo = max(lo, -alpha / beta);
          }
        }
        if (!feasible || hi < lo) continue;
        std::vector<Affine> obj;
        for (const Grad& g : active) {
          obj.push_back({-(g.du * step.du + g.dv * step.dv), -(g.du * base.du + g.dv * base.dv)});
        }
        best = max(best, maximize_min_affine(obj, lo, hi).value);
      }
    }
  }
  return best;
}

ZeroSetReport epi_zero_set_check(const EpigraphicalMF& e, const Box3& box, const GridSpec& grid) {
  grid.validate();
  ZeroSetReport rep;
  const bool exact = e.is_exact() && box.x_lo.is_exact() && box.x_hi.is_exact();
  rep.backend = exact ? Backend::rational : Backend::floating;
  std::vector<Real> xs = evenly(box.x_lo, box.x_hi, 4 * grid.count(0) + 1);
  for (const Real& b : merged(e.f().breakpoints(), e.g().breakpoints())) {
    if (box.x_lo <= b && b <= box.x_hi) xs.push_back(b);
  }
  sort_unique(xs);
  const std::vector<Real> k_grid = evenly(box.k_lo, box.k_hi, 4 * grid.count(1) + 1);
  const std::vector<Real> y_grid = evenly(box.y_lo, box.y_hi, 4 * grid.count(2) + 1);
  for (const Real& x : xs) {
    if (!e.g().domain().contains(x)) continue;
    std::vector<Real> ks = merged(k_grid, e.g().image_or_empty(x).endpoints());
    ks = merged(ks, e.g().closure_fiber(x).endpoints());
    for (const Real& k : ks) {
      if (k < box.k_lo || box.k_hi < k) continue;
      std::vector<Real> ys = y_grid;
      for (const Real& t : e.f().image_or_empty(x).endpoints()) ys.push_back(t + k);
      for (const Real& t : e.f().closure_fiber(x).endpoints()) ys.push_back(t + k);
      sort_unique(ys);
      for (const Real& y : ys) {
        if (y < box.y_lo || box.y_hi < y) continue;
        ++rep.points_checked;
        const Real phi = epi_envelope_exact(e, x, k, y);
        const bool zero = exact ? phi.sign() == 0 : near_zero(phi);
        // Float membership is read up to the same tolerance as phi.
        const bool member = exact ? e.in_solution_set(x, k, y) : near_zero(e.solution_distance(x, k, y));
        if (zero != member && !rep.mismatch) rep.mismatch = ZeroSetMismatch{x, k, y, phi, member};
      }
    }
  }
  if (rep.mismatch) {
    // Rounded graph points fall off single-valued graphs, so only exact
    // mismatches are certified.
    rep.verdict = exact ? Verdict::violated : Verdict::inconclusive;
  } else {
    rep.verdict = exact ? Verdict::holds : Verdict::inconclusive_pass;
  }
  return rep;
}

ModulusReport epi_mr_modulus(const EpigraphicalMF& e, const Real& xbar, const Real& kbar, const Real& ybar,
                             const NeighborhoodSchedule& sched, const GridSpec& grid, bool use_envelope) {
  grid.validate();
  if (!e.value(xbar, kbar).contains(ybar)) throw PointNotOnGraph("ybar is not in E(xbar, kbar)");
  ModulusReport rep;
  rep.kind = ModulusKind::metric_regularity;
  const bool exact = e.is_exact() && xbar.is_exact() && kbar.is_exact() && ybar.is_exact();
  rep.backend = exact ? Backend::rational : Backend::floating;
  const std::vector<Real> xbps = merged(e.f().breakpoints(), e.g().breakpoints());
  const std::vector<Real> ybps = e.value(xbar, kbar).endpoints();
  for (const Real& r : sched.radii()) {
    Real best = zero_like(exact);
    std::vector<ModulusWitness> wit;
    const std::vector<Real> ys = ball_samples(ybar, r, grid, 2, ybps);
    std::vector<std::vector<Cell>> sol;
    sol.reserve(ys.size());
    for (const Real& y : ys) sol.push_back(e.solution_cells(y));
    for (const Real& x : ball_samples(xbar, r, grid, 0, xbps)) {
      if (!e.g().domain().contains(x) || !e.f().domain().contains(x)) continue;
      const IntervalSet gx = e.g().image_or_empty(x);
      const IntervalSet fx = e.f().image_or_empty(x);
      for (const Real& k : ball_samples(kbar, r, grid, 1, gx.endpoints())) {
        if (!gx.contains(k)) continue;
        for (std::size_t j = 0; j < ys.size(); ++j) {
          const Real& y = ys[j];
          const Real den = use_envelope ? epi_envelope_exact(e, x, k, y) : fx.dist(y - k);
          if (den.sign() == 0 || !den.is_finite()) continue;
          const Real ratio = product_distance_to_cells(sol[j], x, k, e.lambda()) / den;
          ++rep.samples;
          if (ratio > best) {
            best = ratio;
            wit.clear();
          }
          if (ratio == best && ratio.sign() > 0 && wit.size() < 16) wit.push_back({{x, k, y}, ratio});
        }
      }
    }
    rep.trace.push_back({r, best});
    rep.witnesses = std::move(wit);
  }
  rep.verdict = classify_trace(rep.trace);
  rep.value = rep.verdict == ModulusVerdict::irregular ? Real::inf() : rep.trace.back().value;
  return rep;
}

std::string to_string(StabilityVerdict v) {
  switch (v) {
    case StabilityVerdict::stable: return "stable";
    case StabilityVerdict::unstable: return "unstable";
    case StabilityVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

bool decomposes(const PiecewiseMultifunction& f, const PiecewiseMultifunction& g, const Real& x, const Real& w,
                const Real& ybar, const Real& zbar, const Real& eps) {
  const Ranges fy = clip_open(to_ranges(f.image_or_empty(x)), ybar, eps);
  const Ranges gz = clip_open(to_ranges(g.image_or_empty(x)), zbar, eps);
  return ranges_contain(sum_ranges(fy, gz), w);
}

bool usc_singleton_at(const PiecewiseMultifunction& g, const Real& xbar, const Real& zbar) {
  if (!g.domain().contains(xbar) || !(g.image(xbar) == IntervalSet::point(zbar))) return false;
  for (const Cell& c : g.cells()) {
    const auto s = c.closure_section(xbar);
    if (s && !(s->lo == zbar && s->hi == zbar)) return false;
  }
  return true;
}

SumStabilityReport sum_stability_probe(const PiecewiseMultifunction& f, const PiecewiseMultifunction& g,
                                       const Real& xbar, const Real& ybar, const Real& zbar,
                                       const std::vector<Real>& eps_list, const NeighborhoodSchedule& sched,
                                       const GridSpec& grid) {
  grid.validate();
  if (!f.image(xbar).contains(ybar)) throw PointNotOnGraph("ybar is not in F(xbar)");
  if (!g.image(xbar).contains(zbar)) throw PointNotOnGraph("zbar is not in G(xbar)");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (eps_list[i].sign() <= 0 || (i > 0 && !(eps_list[i] < eps_list[i - 1]))) {
      throw ValidationError("eps list must be positive and strictly decreasing");
    }
  }
  SumStabilityReport rep;
  const bool exact = f.is_exact() && g.is_exact() && xbar.is_exact() && ybar.is_exact() && zbar.is_exact();
  rep.backend = exact ? Backend::rational : Backend::floating;
  if (usc_singleton_at(g, xbar, zbar)) {
    rep.shortcut_used = true;
    rep.verdict = StabilityVerdict::stable;
    return rep;
  }
  const PiecewiseMultifunction sum = sum_mf(f, g);
  const Real center = ybar + zbar;
  const std::vector<Real> bps = merged(f.breakpoints(), g.breakpoints());
  // Witness priority, highest first.
  auto key = [&](const StabilityCandidate& c) {
    return std::make_tuple(c.both_nonempty, abs(c.x - xbar), c.x > xbar, c.grid_w, abs(c.w - center), c.w > center);
  };
  bool all_stable = true;
  for (const Real& eps : eps_list) {
    StabilityRow row{eps, std::nullopt, {}};
    for (const Real& delta : sched.radii()) {
      std::optional<StabilityCandidate> worst;
      const std::vector<Real> ws = ball_samples(center, delta, grid, 1);
      for (const Real& x : ball_samples(xbar, delta, grid, 0, bps)) {
        if (!sum.domain().contains(x)) continue;
        const Ranges fy = clip_open(to_ranges(f.image_or_empty(x)), ybar, eps);
        const Ranges gz = clip_open(to_ranges(g.image_or_empty(x)), zbar, eps);
        const Ranges bad = subtract(clip_open(to_ranges(sum.image_or_empty(x)), center, delta), sum_ranges(fy, gz));
        if (bad.empty()) continue;
        std::vector<StabilityCandidate> cands;
        for (const Range& piece : bad) {
          bool hit = false;
          for (const Real& w : ws) {
            if (piece.contains(w)) {
              cands.push_back({x, w, !fy.empty() && !gz.empty(), true});
              hit = true;
            }
          }
          if (!hit) cands.push_back({x, point_in(piece), !fy.empty() && !gz.empty(), false});
        }
        for (const StabilityCandidate& c : cands) {
          if (!worst || key(c) > key(*worst)) worst = c;
        }
      }
      if (!worst) {
        row.delta = delta;
        break;
      }
      row.failures.push_back({eps, delta, worst->x, worst->w});
    }
    if (!row.delta) {
      all_stable = false;
      if (!rep.witness) rep.witness = row.failures.front();
    }
    rep.rows.push_back(std::move(row));
  }
  if (!all_stable) {
    rep.verdict = StabilityVerdict::unstable;
  } else {
    rep.verdict = exact ? StabilityVerdict::stable : StabilityVerdict::inconclusive;
  }
  return rep;
}

Real default_theta(const PiecewiseMultifunction& g, const Real& xbar, const Real& kbar) {
  const IntervalSet s = g.image(xbar);
  Real gap = Real::inf();
  for (const Interval& iv : s.intervals()) {
    if (iv.contains(kbar)) continue;
    gap = min(gap, kbar < iv.lo ? iv.lo - kbar : kbar - iv.hi);
  }
  return gap.is_finite() ? gap / Real(2) : gap;
}

LocalizedEstimateReport localized_sum_estimate_check(const PiecewiseMultifunction& f,
                                                     const PiecewiseMultifunction& g, const Real& xbar,
                                                     const Real& kbar, const Real& ybar, const Real& tau,
                                                     const Real& theta, const NeighborhoodSchedule& sched,
                                                     const GridSpec& grid) {
  grid.validate();
  if (!g.image(xbar).contains(kbar)) throw PointNotOnGraph("kbar is not in G(xbar)");
  if (!f.image(xbar).contains(ybar - kbar)) throw PointNotOnGraph("ybar - kbar is not in F(xbar)");
  if (tau.sign() <= 0 || theta.sign() <= 0) throw ValidationError("tau and theta must be positive");
  LocalizedEstimateReport rep;
  rep.theta = theta;
  const bool exact = f.is_exact() && g.is_exact() && tau.is_exact() && theta.is_exact();
  rep.backend = exact ? Backend::rational : Backend::floating;
  const PiecewiseMultifunction sum = sum_mf(f, g);
  const std::vector<Real> radii = sched.radii();
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const Real& r = radii[i];
    std::size_t bad = 0;
    std::optional<LocalizedWitness> worst;
    const std::vector<Real> ys = ball_samples(ybar, r, grid, 1);
    std::vector<IntervalSet> pre;
    for (const Real& y : ys) pre.push_back(sum.preimage(y));
    for (const Real& x : ball_samples(xbar, r, grid, 0, sum.breakpoints())) {
      if (!sum.domain().contains(x)) continue;
      IntervalSet gv = g.image_or_empty(x);
      if (theta.is_finite()) gv = gv.clip(kbar - theta, kbar + theta);
      const IntervalSet local = minkowski_sum(f.image_or_empty(x), gv);
      for (std::size_t j = 0; j < ys.size(); ++j) {
        const Real d = local.dist(ys[j]);
        if (!d.is_finite()) continue;
        const Real rhs = tau * d;
        const Real lhs = pre[j].dist(x);
        if (le(lhs, rhs, exact)) continue;
        ++bad;
        if (!worst || lhs - rhs > worst->lhs - worst->rhs) worst = LocalizedWitness{x, ys[j], lhs, rhs};
      }
    }
    rep.violations_per_radius.push_back(bad);
    if (i + 1 == radii.size()) rep.witness = worst;
  }
  if (rep.witness) {
    rep.verdict = Verdict::violated;
  } else {
    rep.verdict = exact ? Verdict::holds : Verdict::inconclusive_pass;
  }
  return rep;
}

CoveringReport covering_check(const PiecewiseMultifunction& f, const PiecewiseMultifunction& g, const Real& xbar,
                              const Real& kbar, const Real& zbar, const Real& rate,
                              const NeighborhoodSchedule& sched, const GridSpec& grid) {
  grid.validate();
  CoveringReport rep;
  rep.required_rate = rate;
  const bool exact = f.is_exact() && g.is_exact() && rate.is_exact();
  const PiecewiseMultifunction sum = sum_mf(f, g);
  const std::vector<Real> radii = sched.radii();
  const Real& r = radii.back();
  rep.min_rate = Real::inf();
  std::vector<Real> rhos;
  for (const Real& o : ball_offsets(r, grid.count(3), grid.mode)) {
    if (o.sign() > 0) rhos.push_back(o);
  }
  sort_unique(rhos);
  for (const Real& x : ball_samples(xbar, r, grid, 0, sum.breakpoints())) {
    if (!sum.domain().contains(x)) continue;
    const IntervalSet gx = g.image_or_empty(x);
    const IntervalSet fx = f.image_or_empty(x);
    for (const Real& k : ball_samples(kbar, r, grid, 1, gx.endpoints())) {
      if (!gx.contains(k)) continue;
      for (const Real& z : ball_samples(zbar, r, grid, 2, fx.endpoints())) {
        if (!fx.contains(z)) continue;
        for (const Real& rho : rhos) {
          const Real q = openness_ratio(sum, x, k + z, rho);
          if (q < rep.min_rate) {
            rep.min_rate = q;
            if (!le(rate, q, exact)) rep.witness = CoveringWitness{x, k, z, rho, q};
          }
        }
      }
    }
  }
  rep.passed = !rep.witness;
  return rep;
}

SumTheoremReport sum_theorem_verify(const PiecewiseMultifunction& f, const PiecewiseMultifunction& g,
                                    const Real& xbar, const Real& kbar, const Real& ybar, const Real& tau,
                                    const Real& lambda, const NeighborhoodSchedule& sched, const GridSpec& grid,
                                    double tol) {
  if (tau.sign() <= 0 || lambda.sign() < 0) throw PreconditionViolated("tau must be positive, lambda nonnegative");
  if (!(tau * lambda < Real(1))) throw PreconditionViolated("tau * lambda >= 1");
  SumTheoremReport rep;
  rep.f_modulus = mr_modulus(f, xbar, ybar - kbar, sched, grid);
  if (rep.f_modulus.verdict != ModulusVerdict::regular || !approx_le(rep.f_modulus.value, tau, tol)) {
    throw PreconditionViolated("regularity of F with modulus " + tau.str() + " not certified (measured " +
                               rep.f_modulus.value.str() + ")");
  }
  rep.g_lipschitz = aubin_modulus(g, xbar, kbar, sched, grid);
  if (rep.g_lipschitz.verdict != ModulusVerdict::regular || !approx_le(rep.g_lipschitz.value, lambda, tol)) {
    throw PreconditionViolated("Lipschitz property of G with modulus " + lambda.str() + " not certified (measured " +
                               rep.g_lipschitz.value.str() + ")");
  }
  rep.bound = Real(1) / (Real(1) / tau - lambda);
  const EpigraphicalMF e(f, g, lambda);
  rep.e_modulus = epi_mr_modulus(e, xbar, kbar, ybar, sched, grid);
  rep.a_passed = rep.e_modulus.verdict == ModulusVerdict::regular && approx_le(rep.e_modulus.value, rep.bound, tol);
  rep.stability = sum_stability_probe(f, g, xbar, ybar - kbar, kbar, {Real::rational(1, 4), Real::rational(1, 8)},
                                      sched, grid);
  rep.sum_standalone = mr_modulus(sum_mf(f, g), xbar, ybar, sched, grid);
  if (rep.stability.verdict == StabilityVerdict::stable) {
    rep.b_ran = true;
    rep.sum_modulus = rep.sum_standalone;
    rep.b_passed = rep.sum_standalone.verdict == ModulusVerdict::regular &&
                   approx_le(rep.sum_standalone.value, rep.bound, tol);
  } else {
    rep.b_skip_reason = "sum-stability absent";
  }
  rep.c = covering_check(f, g, xbar, kbar, ybar - kbar, Real(1) / rep.bound, sched, grid);
  return rep;
}

PiecewiseMultifunction counterexample_f() {
  const Real zero(0);
  Piece right{"nonneg", Range::make(zero, Real::inf(), false, true), {Band{std::nullopt, {Affine{Real(-1), zero}}, {}}}};
  Piece left{"neg", Range::make(Real::neg_inf(), zero, true, true),
             {Band{std::nullopt, {Affine{zero, Real(-1)}}, {Affine{zero, Real(-1)}}}}};
  return PiecewiseMultifunction("F", Range::all(), {right, left});
}

PiecewiseMultifunction counterexample_g() {
  return PiecewiseMultifunction::constant("G", IntervalSet::normalize({{Real(0), Real(0)}, {Real(1), Real(1)}}));
}

CounterexampleBundle paper_counterexample(const Real& delta) {
  if (!(delta.sign() > 0 && delta < Real(1))) throw PreconditionViolated("delta must lie in (0, 1)");
  CounterexampleBundle b;
  b.delta = delta;
  b.f = counterexample_f();
  b.g = counterexample_g();
  b.sum = sum_mf(b.f, b.g);
  b.x = -delta / Real(2);
  b.y = -delta * delta / Real(2);
  b.dist_preimage = inverse_distance(b.sum, b.y, b.x);
  b.dist_image = b.sum.image(b.x).dist(b.y);
  b.ratio = b.dist_preimage / b.dist_image;
  b.ratio_formula = "(1+delta)/delta = " + ((Real(1) + delta) / delta).str();
  const Real half = delta / Real(2);
  b.instability = {delta / Real(4), delta, half, half};
  const bool in_ball = abs(half) < delta && b.sum.image(half).contains(half);
  b.instability_verified = in_ball && !decomposes(b.f, b.g, half, half, Real(0), Real(0), b.instability.epsilon);
  return b;
}

}  // namespace vwb
