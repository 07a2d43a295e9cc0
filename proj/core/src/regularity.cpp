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

#include "vwb/regularity.hpp"

#include <algorithm>

#include "vwb/errors.hpp"

namespace vwb {

namespace {

constexpr std::size_t kMaxWitnesses = 16;

Real zero_like(bool exact) { return exact ? Real(0) : Real::from_double(0.0); }

// Running sup (or inf) with the samples attaining it.
class Extremum {
 public:
  Extremum(bool want_max, Real start) : want_max_(want_max), best_(std::move(start)) {}

  void offer(const Real& ratio, std::vector<Real> point) {
    ++count_;
    const bool better = want_max_ ? ratio > best_ : ratio < best_;
    if (better) {
      best_ = ratio;
      wit_.clear();
    }
    if (ratio == best_ && wit_.size() < kMaxWitnesses) wit_.push_back({std::move(point), ratio});
  }

  const Real& best() const { return best_; }
  std::vector<ModulusWitness> take() { return std::move(wit_); }
  std::size_t count() const { return count_; }

 private:
  bool want_max_;
  Real best_;
  std::vector<ModulusWitness> wit_;
  std::size_t count_ = 0;
};

void finish_sup(ModulusReport& rep) {
  rep.verdict = classify_trace(rep.trace);
  rep.value = rep.verdict == ModulusVerdict::irregular ? Real::inf() : rep.trace.back().value;
}

Real reciprocal(const Real& v) {
  if (v.sign() == 0) return Real::inf();
  if (v.is_pos_inf()) return zero_like(true);
  return Real(1) / v;
}

std::vector<Real> positive_offsets(const Real& r, const GridSpec& grid, std::size_t axis) {
  std::vector<Real> out;
  for (const Real& o : ball_offsets(r, grid.count(axis), grid.mode)) {
    if (o.sign() > 0) out.push_back(o);
  }
  sort_unique(out);
  return out;
}

template <typename A, typename B>
std::vector<Real> concat(A a, const B& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

std::string to_string(ModulusKind k) {
  switch (k) {
    case ModulusKind::metric_regularity: return "metric-regularity";
    case ModulusKind::aubin: return "aubin";
    case ModulusKind::openness_rate: return "openness-rate";
    case ModulusKind::robinson: return "robinson";
    case ModulusKind::lipschitz_x: return "lipschitz-x";
    case ModulusKind::lipschitz_p: return "lipschitz-p";
  }
  return "?";
}

std::string to_string(UniformWrt w) {
  return w == UniformWrt::x_uniform_in_p ? "x-uniform-in-p" : "p-uniform-in-x";
}

UniformWrt uniform_wrt_from_string(const std::string& s) {
  if (s == "x-uniform-in-p" || s == "x") return UniformWrt::x_uniform_in_p;
  if (s == "p-uniform-in-x" || s == "p") return UniformWrt::p_uniform_in_x;
  throw ValidationError("unknown uniformity direction: " + s);
}

std::optional<Real> mr_ratio(const PiecewiseMultifunction& f, const Real& x, const Real& y) {
  if (!f.domain().contains(x)) return std::nullopt;
  const Real den = f.image_or_empty(x).dist(y);
  if (den.sign() == 0 || !den.is_finite()) return std::nullopt;
  return inverse_distance(f, y, x) / den;
}

std::optional<Real> aubin_ratio(const PiecewiseMultifunction& s, const Real& y, const Real& y_prime,
                                const Real& x) {
  if (y == y_prime || !s.domain().contains(y_prime)) return std::nullopt;
  if (!s.image_or_empty(y_prime).contains(x)) return std::nullopt;
  const IntervalSet sy = s.domain().contains(y) ? s.image_or_empty(y) : IntervalSet();
  return sy.dist(x) / abs(y - y_prime);
}

Real openness_ratio(const PiecewiseMultifunction& f, const Real& x, const Real& y, const Real& rho) {
  return f.image_of_interval(x - rho, x + rho).dist_to_complement(y) / rho;
}

std::optional<Real> robinson_ratio(const PiecewiseMultifunction& f, const ParametricMultifunction& g,
                                   const Real& x, const Real& p) {
  if (!f.domain().contains(x) || !g.x_domain().contains(x) || !g.p_domain().contains(p)) {
    return std::nullopt;
  }
  const Real den = minkowski_sum(f.image_or_empty(x), g.image(x, p)).dist(Real(0));
  if (den.sign() == 0 || !den.is_finite()) return std::nullopt;
  return robinson_solution_set(f, g, p).dist(x) / den;
}

ModulusReport mr_modulus(const PiecewiseMultifunction& f, const Real& xbar, const Real& ybar,
                         const NeighborhoodSchedule& sched, const GridSpec& grid) {
  grid.validate();
  if (!f.image(xbar).contains(ybar)) throw PointNotOnGraph("(xbar, ybar) is not on the graph");
  ModulusReport rep;
  rep.kind = ModulusKind::metric_regularity;
  const bool exact = f.is_exact() && xbar.is_exact() && ybar.is_exact();
  rep.backend = exact ? Backend::rational : Backend::floating;
  const std::vector<Real> xbps = f.breakpoints();
  const std::vector<Real> ybps = f.image(xbar).endpoints();
  for (const Real& r : sched.radii()) {
    Extremum ext(true, zero_like(exact));
    const std::vector<Real> ys = ball_samples(ybar, r, grid, 1, ybps);
    for (const Real& x : ball_samples(xbar, r, grid, 0, xbps)) {
      for (const Real& y : ys) {
        if (auto q = mr_ratio(f, x, y)) ext.offer(*q, {x, y});
      }
    }
    rep.trace.push_back({r, ext.best()});
    rep.samples += ext.count();
    rep.witnesses = ext.take();
  }
  finish_sup(rep);
  return rep;
}

ModulusReport aubin_modulus(const PiecewiseMultifunction& s, const Real& ybar, const Real& xbar,
                            const NeighborhoodSchedule& sched, const GridSpec& grid) {
  grid.validate();
  if (!s.image(ybar).contains(xbar)) throw PointNotOnGraph("xbar is not in S(ybar)");
  ModulusReport rep;
  rep.kind = ModulusKind::aubin;
  const bool exact = s.is_exact() && xbar.is_exact() && ybar.is_exact();
  rep.backend = exact ? Backend::rational : Backend::floating;
  const std::vector<Real> bps = s.breakpoints();
  for (const Real& r : sched.radii()) {
    Extremum ext(true, zero_like(exact));
    const std::vector<Real> ys = ball_samples(ybar, r, grid, 0, bps);
    for (const Real& yp : ys) {
      if (!s.domain().contains(yp)) continue;
      const IntervalSet syp = s.image_or_empty(yp);
      for (const Real& x : ball_samples(xbar, r, grid, 1, syp.endpoints())) {
        if (!syp.contains(x)) continue;
        for (const Real& y : ys) {
          if (auto q = aubin_ratio(s, y, yp, x)) ext.offer(*q, {y, yp, x});
        }
      }
    }
    rep.trace.push_back({r, ext.best()});
    rep.samples += ext.count();
    rep.witnesses = ext.take();
  }
  finish_sup(rep);
  return rep;
}

ModulusReport openness_rate(const PiecewiseMultifunction& f, const Real& xbar, const Real& ybar,
                            const NeighborhoodSchedule& sched, const GridSpec& grid) {
  grid.validate();
  if (!f.image(xbar).contains(ybar)) throw PointNotOnGraph("(xbar, ybar) is not on the graph");
  ModulusReport rep;
  rep.kind = ModulusKind::openness_rate;
  const bool exact = f.is_exact() && xbar.is_exact() && ybar.is_exact();
  rep.backend = exact ? Backend::rational : Backend::floating;
  const std::vector<Real> xbps = f.breakpoints();
  Trace inverse_trace;
  for (const Real& r : sched.radii()) {
    Extremum ext(false, Real::inf());
    const std::vector<Real> rhos = positive_offsets(r, grid, 2);
    for (const Real& x : ball_samples(xbar, r, grid, 0, xbps)) {
      if (!f.domain().contains(x)) continue;
      const IntervalSet fx = f.image_or_empty(x);
      for (const Real& y : ball_samples(ybar, r, grid, 1, fx.endpoints())) {
        if (!fx.contains(y)) continue;
        for (const Real& rho : rhos) ext.offer(openness_ratio(f, x, y, rho), {x, y, rho});
      }
    }
    rep.trace.push_back({r, ext.best()});
    inverse_trace.push_back({r, reciprocal(ext.best())});
    rep.samples += ext.count();
    rep.witnesses = ext.take();
  }
  rep.verdict = classify_trace(inverse_trace);
  rep.value = rep.verdict == ModulusVerdict::irregular ? zero_like(exact) : rep.trace.back().value;
  return rep;
}

EquivalenceReport equivalence_check(const PiecewiseMultifunction& f, const Real& xbar, const Real& ybar,
                                    double tol, const NeighborhoodSchedule& sched, const GridSpec& grid) {
  if (!(tol > 0)) throw ValidationError("tol must be positive");
  EquivalenceReport rep;
  rep.mr = mr_modulus(f, xbar, ybar, sched, grid);
  rep.aubin = aubin_modulus(f.inverse(), ybar, xbar, sched, grid);
  rep.openness = openness_rate(f, xbar, ybar, sched, grid);
  const ModulusVerdict a = rep.mr.verdict;
  const ModulusVerdict b = rep.aubin.verdict;
  const ModulusVerdict c = rep.openness.verdict;
  const bool exact = rep.mr.backend == Backend::rational;
  const double t = exact ? 0.0 : tol;
  if (a == ModulusVerdict::irregular && b == a && c == a) {
    rep.verdict = Verdict::holds;
    rep.detail = "all three irregular";
    return rep;
  }
  if (a == ModulusVerdict::regular && b == a && c == a) {
    const Real inv = reciprocal(rep.openness.value);
    const bool agree = approx_equal(rep.mr.value, rep.aubin.value, t) && approx_equal(rep.mr.value, inv, t);
    rep.verdict = agree ? Verdict::holds : Verdict::violated;
    rep.detail = "mr=" + rep.mr.value.str() + " aubin=" + rep.aubin.value.str() + " 1/rate=" + inv.str();
    return rep;
  }
  rep.verdict = Verdict::inconclusive;
  rep.detail = "verdicts differ: " + to_string(a) + ", " + to_string(b) + ", " + to_string(c);
  return rep;
}

Real sup_distance(const IntervalSet& a, const IntervalSet& t) {
  if (a.empty()) return Real::neg_inf();
  if (t.empty()) return Real::inf();
  std::vector<Real> cand = a.endpoints();
  const auto& parts = t.intervals();
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    const Real m = midpoint(parts[i].hi, parts[i + 1].lo);
    if (a.contains(m)) cand.push_back(m);
  }
  Real best = Real::neg_inf();
  for (const Real& k : cand) best = max(best, t.dist(k));
  return best;
}

ModulusReport pl_uniform_modulus(const ParametricMultifunction& g, const Real& xbar, const Real& pbar,
                                 const Real& kbar, UniformWrt wrt, const NeighborhoodSchedule& sched,
                                 const GridSpec& grid) {
  grid.validate();
  if (!g.image(xbar, pbar).contains(kbar)) throw PointNotOnGraph("kbar is not in G(xbar, pbar)");
  ModulusReport rep;
  const bool by_x = wrt == UniformWrt::x_uniform_in_p;
  rep.kind = by_x ? ModulusKind::lipschitz_x : ModulusKind::lipschitz_p;
  const bool exact = g.is_exact() && xbar.is_exact() && pbar.is_exact() && kbar.is_exact();
  rep.backend = exact ? Backend::rational : Backend::floating;
  const std::vector<Real> pbps = g.p_breakpoints();
  for (const Real& r : sched.radii()) {
    Extremum ext(true, zero_like(exact));
    // The moving variable runs over `moving`; the frozen one over `frozen`.
    const std::vector<Real> frozen = by_x ? ball_samples(pbar, r, grid, 1, pbps) : ball_samples(xbar, r, grid, 0);
    for (const Real& fz : frozen) {
      const bool in_dom = by_x ? g.p_domain().contains(fz) : g.x_domain().contains(fz);
      if (!in_dom) continue;
      const PiecewiseMultifunction slice = by_x ? g.slice_p(fz) : g.slice_x(fz);
      const std::vector<Real> moving = by_x ? ball_samples(xbar, r, grid, 0, slice.breakpoints())
                                            : ball_samples(pbar, r, grid, 1, concat(pbps, slice.breakpoints()));
      std::vector<IntervalSet> imgs;
      for (const Real& m : moving) imgs.push_back(slice.image_or_empty(m));
      for (std::size_t i = 0; i < moving.size(); ++i) {
        if (!slice.domain().contains(moving[i])) continue;
        const IntervalSet a = imgs[i].clip(kbar - r, kbar + r);
        if (a.empty()) continue;
        for (std::size_t j = 0; j < moving.size(); ++j) {
          if (i == j || !slice.domain().contains(moving[j])) continue;
          const Real q = sup_distance(a, imgs[j]) / abs(moving[i] - moving[j]);
          ext.offer(q, {moving[i], moving[j], fz});
        }
      }
    }
    rep.trace.push_back({r, ext.best()});
    rep.samples += ext.count();
    rep.witnesses = ext.take();
  }
  finish_sup(rep);
  return rep;
}

IntervalSet robinson_solution_set(const PiecewiseMultifunction& f, const ParametricMultifunction& g,
                                  const Real& p) {
  return sum_mf(f, g.slice_p(p)).preimage(Real(0));
}

ModulusReport robinson_modulus(const PiecewiseMultifunction& f, const ParametricMultifunction& g,
                               const Real& xbar, const Real& pbar, const NeighborhoodSchedule& sched,
                               const GridSpec& grid) {
  grid.validate();
  if (!minkowski_sum(f.image(xbar), g.image(xbar, pbar)).contains(Real(0))) {
    throw PointNotOnGraph("0 is not in F(xbar) + G(xbar, pbar)");
  }
  ModulusReport rep;
  rep.kind = ModulusKind::robinson;
  const bool exact = f.is_exact() && g.is_exact() && xbar.is_exact() && pbar.is_exact();
  rep.backend = exact ? Backend::rational : Backend::floating;
  const std::vector<Real> pbps = g.p_breakpoints();
  for (const Real& r : sched.radii()) {
    Extremum ext(true, zero_like(exact));
    for (const Real& p : ball_samples(pbar, r, grid, 1, pbps)) {
      if (!g.p_domain().contains(p)) continue;
      const PiecewiseMultifunction sum = sum_mf(f, g.slice_p(p));
      const IntervalSet sol = sum.preimage(Real(0));
      for (const Real& x : ball_samples(xbar, r, grid, 0, concat(sum.breakpoints(), sol.endpoints()))) {
        if (!sum.domain().contains(x)) continue;
        const Real den = sum.image_or_empty(x).dist(Real(0));
        if (den.sign() == 0 || !den.is_finite()) continue;
        ext.offer(sol.dist(x) / den, {x, p});
      }
    }
    rep.trace.push_back({r, ext.best()});
    rep.samples += ext.count();
    rep.witnesses = ext.take();
  }
  finish_sup(rep);
  return rep;
}

}  // namespace vwb
