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

#include "vwb/coderivative.hpp"

#include <algorithm>

#include "vwb/epigraph.hpp"
#include "vwb/errors.hpp"

namespace vwb {

namespace {

void require_plane(int dim) {
  if (dim != 2) throw UnsupportedDimension("exact cone operations need dimension 2, got " + std::to_string(dim));
}

bool is_null(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Real& c) { return c.sign() == 0; });
}

Vec normalized(const Vec& v) {
  Real m(0);
  for (const Real& c : v) m = max(m, abs(c));
  Vec out;
  for (const Real& c : v) out.push_back(c / m);
  return out;
}

Real cross(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

int half(const Vec& v) { return (v[1].sign() > 0 || (v[1].sign() == 0 && v[0].sign() > 0)) ? 0 : 1; }

bool angle_less(const Vec& a, const Vec& b) {
  const int ha = half(a);
  const int hb = half(b);
  if (ha != hb) return ha < hb;
  return cross(a, b).sign() > 0;
}

bool same_direction(const Vec& a, const Vec& b) { return cross(a, b).sign() == 0 && dot(a, b).sign() > 0; }

void sort_directions(std::vector<Vec>& v) {
  for (Vec& d : v) d = normalized(d);
  std::sort(v.begin(), v.end(), angle_less);
  v.erase(std::unique(v.begin(), v.end(), same_direction), v.end());
}

// d in cone(gens); in the plane two generators suffice.
bool in_hull(const std::vector<Vec>& gens, const Vec& d) {
  if (is_null(d)) return true;
  for (const Vec& g : gens) {
    if (same_direction(g, d)) return true;
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const Real det = cross(gens[i], gens[j]);
      if (det.sign() == 0) continue;
      const Real a = cross(d, gens[j]) / det;
      const Real b = cross(gens[i], d) / det;
      if (a.sign() >= 0 && b.sign() >= 0) return true;
    }
  }
  return false;
}

IntervalSet negate(const IntervalSet& s) {
  std::vector<Interval> out;
  for (const Interval& iv : s.intervals()) out.push_back({-iv.hi, -iv.lo});
  return IntervalSet::normalize(out);
}

// Union of the pieces' tangent data at p, restricted to pieces holding p.
std::vector<const PolyhedralSet*> holding(const PolyhedralUnion& u, const Vec& p) {
  std::vector<const PolyhedralSet*> out;
  for (const PolyhedralSet& s : u) {
    if (s.contains(p)) out.push_back(&s);
  }
  if (out.empty()) throw PointNotInSet("point is not in the polyhedral union");
  return out;
}

std::vector<Cone> graph_cones(const PiecewiseMultifunction& f, const Real& x, const Real& y, ConeKind kind) {
  const PolyhedralUnion u = graph_of(f);
  const Vec p{x, y};
  if (kind == ConeKind::frechet) return {frechet_normal_cone(u, p)};
  return limiting_normal_cone(u, p);
}

IntervalSet sections(const std::vector<Cone>& cones, const Real& ystar) {
  IntervalSet out;
  for (const Cone& c : cones) out = out.unite(cone_section(c, ystar));
  return out;
}

Real clamp_to(const Real& t, const Interval& s) {
  if (t < s.lo) return s.lo;
  if (t > s.hi) return s.hi;
  return t;
}

}  // namespace

Real dot(const Vec& a, const Vec& b) {
  Real s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Cone::Cone(int dim, std::vector<Vec> rows) : dim_(dim), rows_(std::move(rows)) {
  if (dim_ < 1 || dim_ > 4) throw UnsupportedDimension("cone dimension must be 1..4");
  for (const Vec& r : rows_) {
    if (static_cast<int>(r.size()) != dim_) throw ValidationError("cone row has the wrong dimension");
  }
}

Cone Cone::zero(int dim) {
  std::vector<Vec> rows;
  for (int i = 0; i < dim; ++i) {
    Vec e(dim, Real(0));
    e[i] = Real(1);
    rows.push_back(e);
    e[i] = Real(-1);
    rows.push_back(e);
  }
  return Cone(dim, rows);
}

Cone Cone::generated_by(int dim, const std::vector<Vec>& gens) {
  require_plane(dim);
  // Bipolar: cone(G) = polar of {y : <g, y> <= 0}.
  return Cone(dim, Cone(dim, gens).generators());
}

bool Cone::contains(const Vec& d) const {
  return std::all_of(rows_.begin(), rows_.end(), [&](const Vec& r) { return dot(r, d).sign() <= 0; });
}

std::vector<Vec> Cone::generators() const {
  require_plane(dim_);
  std::vector<Vec> cand;
  bool trivial = true;
  for (const Vec& a : rows_) {
    if (is_null(a)) continue;
    trivial = false;
    cand.push_back({-a[1], a[0]});
    cand.push_back({a[1], -a[0]});
    cand.push_back({-a[0], -a[1]});
  }
  if (trivial) cand = {{Real(1), Real(0)}, {Real(0), Real(1)}, {Real(-1), Real(0)}, {Real(0), Real(-1)}};
  std::vector<Vec> gens;
  for (const Vec& d : cand) {
    if (contains(d)) gens.push_back(d);
  }
  sort_directions(gens);
  // Drop generators spanned by the others.
  for (std::size_t i = 0; i < gens.size();) {
    std::vector<Vec> rest = gens;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    if (in_hull(rest, gens[i])) {
      gens = std::move(rest);
    } else {
      ++i;
    }
  }
  return gens;
}

Cone Cone::polar() const { return generated_by(dim_, rows_); }

Cone Cone::intersect(const Cone& o) const {
  if (o.dim_ != dim_) throw ValidationError("cone dimensions differ");
  std::vector<Vec> rows = rows_;
  rows.insert(rows.end(), o.rows_.begin(), o.rows_.end());
  return Cone(dim_, rows);
}

bool Cone::subset_of(const Cone& o) const {
  const std::vector<Vec> g = generators();
  return std::all_of(g.begin(), g.end(), [&](const Vec& d) { return o.contains(d); });
}

std::string Cone::str() const {
  const std::vector<Vec> g = generators();
  if (g.empty()) return "{0}";
  std::string s = "cone{";
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i > 0) s += ", ";
    s += "(" + g[i][0].str() + ", " + g[i][1].str() + ")";
  }
  return s + "}";
}

PolyhedralSet::PolyhedralSet(int dim, std::vector<HalfSpace> rows) : dim_(dim), rows_(std::move(rows)) {
  if (dim_ < 1 || dim_ > 4) throw UnsupportedDimension("polyhedron dimension must be 1..4");
  for (const HalfSpace& h : rows_) {
    if (static_cast<int>(h.a.size()) != dim_) throw ValidationError("half-space has the wrong dimension");
  }
}

PolyhedralSet PolyhedralSet::from_cell(const Cell& c) {
  std::vector<HalfSpace> rows;
  if (c.x.lo.is_finite()) rows.push_back({{Real(-1), Real(0)}, -c.x.lo});
  if (c.x.hi.is_finite()) rows.push_back({{Real(1), Real(0)}, c.x.hi});
  for (const Affine& l : c.lower) rows.push_back({{l.a, Real(-1)}, -l.b});
  for (const Affine& h : c.upper) rows.push_back({{-h.a, Real(1)}, h.b});
  return PolyhedralSet(2, rows);
}

bool PolyhedralSet::contains(const Vec& p) const {
  return std::all_of(rows_.begin(), rows_.end(), [&](const HalfSpace& h) { return dot(h.a, p) <= h.b; });
}

std::vector<std::size_t> PolyhedralSet::active(const Vec& p) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (dot(rows_[i].a, p) == rows_[i].b) out.push_back(i);
  }
  return out;
}

Cone PolyhedralSet::tangent_cone(const Vec& p) const {
  if (!contains(p)) throw PointNotInSet("point is not in the polyhedron");
  std::vector<Vec> rows;
  for (std::size_t i : active(p)) rows.push_back(rows_[i].a);
  return Cone(dim_, rows);
}

bool PolyhedralSet::is_exact() const {
  for (const HalfSpace& h : rows_) {
    if (!h.b.is_exact() || !all_exact(h.a)) return false;
  }
  return true;
}

std::string PolyhedralSet::str() const {
  std::string s;
  for (const HalfSpace& h : rows_) {
    for (const Real& c : h.a) s += c.str() + " ";
    s += "<= " + h.b.str() + "\n";
  }
  return s;
}

PolyhedralUnion graph_of(const PiecewiseMultifunction& f) {
  PolyhedralUnion out;
  for (const Cell& c : f.cells()) out.push_back(PolyhedralSet::from_cell(c));
  return out;
}

Cone frechet_normal_cone(const PolyhedralUnion& u, const Vec& p) {
  const auto pieces = holding(u, p);
  Cone out = Cone::whole(pieces.front()->dim());
  for (const PolyhedralSet* s : pieces) out = out.intersect(s->tangent_cone(p).polar());
  return out;
}

std::vector<Cone> limiting_normal_cone(const PolyhedralUnion& u, const Vec& p) {
  const auto pieces = holding(u, p);
  require_plane(pieces.front()->dim());
  std::vector<Vec> rays{{Real(1), Real(0)}, {Real(0), Real(1)}, {Real(-1), Real(0)}, {Real(0), Real(-1)}};
  for (const PolyhedralSet* s : pieces) {
    for (std::size_t i : s->active(p)) {
      const Vec& a = s->rows()[i].a;
      if (is_null(a)) continue;
      rays.push_back({-a[1], a[0]});
      rays.push_back({a[1], -a[0]});
    }
  }
  sort_directions(rays);
  // Each ray and each open sector between consecutive rays is one stratum.
  std::vector<Vec> probes;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    const Vec& a = rays[i];
    const Vec& b = rays[(i + 1) % rays.size()];
    probes.push_back(a);
    probes.push_back({a[0] + b[0], a[1] + b[1]});
  }
  std::vector<Cone> out{frechet_normal_cone(u, p)};
  for (const Vec& d : probes) {
    bool any = false;
    Cone n = Cone::whole(2);
    for (const PolyhedralSet* s : pieces) {
      std::vector<Vec> tight;
      bool inside = true;
      for (std::size_t i : s->active(p)) {
        const Real t = dot(s->rows()[i].a, d);
        if (t.sign() > 0) inside = false;
        if (t.sign() == 0) tight.push_back(s->rows()[i].a);
      }
      if (!inside) continue;
      any = true;
      n = n.intersect(Cone::generated_by(2, tight));
    }
    if (!any) continue;
    if (std::none_of(out.begin(), out.end(), [&](const Cone& c) { return c == n; })) out.push_back(n);
  }
  return out;
}

bool limiting_contains(const std::vector<Cone>& cones, const Vec& d) {
  return std::any_of(cones.begin(), cones.end(), [&](const Cone& c) { return c.contains(d); });
}

std::string to_string(ConeKind k) { return k == ConeKind::frechet ? "frechet" : "limiting"; }

ConeKind cone_kind_from_string(const std::string& s) {
  if (s == "frechet") return ConeKind::frechet;
  if (s == "limiting") return ConeKind::limiting;
  throw ValidationError("unknown cone kind: " + s);
}

IntervalSet cone_section(const Cone& k, const Real& ystar) {
  require_plane(k.dim());
  Real lo = Real::neg_inf();
  Real hi = Real::inf();
  for (const Vec& a : k.rows()) {
    // a0 x* - a1 y* <= 0.
    const Real rhs = a[1] * ystar;
    if (a[0].sign() == 0) {
      if (rhs.sign() < 0) return {};
    } else if (a[0].sign() > 0) {
      hi = min(hi, rhs / a[0]);
    } else {
      lo = max(lo, rhs / a[0]);
    }
  }
  if (hi < lo) return {};
  return IntervalSet::closed(lo, hi);
}

IntervalSet coderivative(const PiecewiseMultifunction& f, const Real& x, const Real& y, const Real& ystar,
                         ConeKind kind) {
  if (!f.image_or_empty(x).contains(y)) throw PointNotOnGraph("(x, y) is not on the graph");
  return sections(graph_cones(f, x, y, kind), ystar);
}

IntervalSet coderivative_at_zero(const PiecewiseMultifunction& f, const Real& x, const Real& y) {
  return coderivative(f, x, y, Real(0), ConeKind::limiting);
}

HypothesisReport hypothesis_H_check(const PiecewiseMultifunction& f, const PiecewiseMultifunction& g,
                                    const Real& xbar, const Real& kbar, const Real& zbar) {
  HypothesisReport rep;
  rep.f_at_zero = coderivative_at_zero(f, xbar, zbar);
  rep.g_at_zero = coderivative_at_zero(g, xbar, kbar);
  rep.qualification = rep.f_at_zero.intersect(negate(rep.g_at_zero));
  const IntervalSet origin = IntervalSet::point(Real(0));
  // Coderivative criterion: D*G(0) = {0} iff G is pseudo-Lipschitz.
  if (rep.g_at_zero == origin) rep.via.push_back("(ii) G pseudo-Lipschitz");
  if (rep.qualification == origin) rep.via.push_back("(iii) D*F(0) n -D*G(0) = {0}");
  rep.holds = !rep.via.empty();
  return rep;
}

std::string to_string(KernelVerdict v) {
  return v == KernelVerdict::predicts_regular ? "predicts-regular" : "predicts-nothing";
}

KernelReport kernel_condition_check(const PiecewiseMultifunction& f, const PiecewiseMultifunction& g,
                                    const Real& xbar, const Real& kbar, const Real& ybar) {
  const Real zbar = ybar - kbar;
  if (!g.image_or_empty(xbar).contains(kbar)) throw PointNotOnGraph("kbar is not in G(xbar)");
  if (!f.image_or_empty(xbar).contains(zbar)) throw PointNotOnGraph("ybar - kbar is not in F(xbar)");
  KernelReport rep;
  const std::vector<Cone> nf = graph_cones(f, xbar, zbar, ConeKind::limiting);
  const std::vector<Cone> ng = graph_cones(g, xbar, kbar, ConeKind::limiting);
  bool pos = false;
  bool neg = false;
  for (const Cone& a : nf) {
    for (const Cone& b : ng) {
      // (x*, y*) with (x*, -y*) in a and (-x*, -y*) in b.
      std::vector<Vec> rows;
      for (const Vec& r : a.rows()) rows.push_back({r[0], -r[1]});
      for (const Vec& r : b.rows()) rows.push_back({-r[0], -r[1]});
      for (const Vec& d : Cone(2, rows).generators()) {
        pos = pos || d[1].sign() > 0;
        neg = neg || d[1].sign() < 0;
      }
    }
  }
  rep.kernel = IntervalSet::closed(neg ? Real::neg_inf() : Real(0), pos ? Real::inf() : Real(0));
  rep.qualification = hypothesis_H_check(f, g, xbar, kbar, zbar).qualification == IntervalSet::point(Real(0));
  const bool trivial = rep.kernel == IntervalSet::point(Real(0));
  rep.verdict = trivial && rep.qualification ? KernelVerdict::predicts_regular : KernelVerdict::predicts_nothing;
  return rep;
}

Real coderivative_slope_bound(const PiecewiseMultifunction& f, const PiecewiseMultifunction& g, const Real& x,
                              const Real& k, const Real& y, const Real& delta) {
  if (delta.sign() < 0 || !(delta < Real(1))) throw ValidationError("delta must lie in [0, 1)");
  if (!g.image_or_empty(x).contains(k)) throw PreconditionViolated("k is not in G(x)");
  if (f.image_or_empty(x).contains(y - k)) throw PreconditionViolated("y is in F(x) + k");
  const EpigraphicalMF e(f, g, Real(1));
  const Real phi = epi_envelope_exact(e, x, k, y);
  // Nearest graph points (x, w) of the branches realizing phi.
  std::vector<Real> ws;
  for (const Cell& a : f.cells()) {
    const auto fa = a.closure_section(x);
    if (!fa) continue;
    for (const Cell& c : g.cells()) {
      const auto part = c.restricted(a.x);
      if (!part) continue;
      const auto sec = part->closure_section(x);
      if (!sec || !sec->contains(k)) continue;
      const Real w = clamp_to(y - k, *fa);
      if (abs(y - k - w) == phi) ws.push_back(w);
    }
  }
  sort_unique(ws);
  const std::vector<Cone> ng = limiting_normal_cone(graph_of(g), {x, k});
  Real best = Real::inf();
  for (const Real& w : ws) {
    const std::vector<Cone> nf = limiting_normal_cone(graph_of(f), {x, w});
    const int s = (w + k - y).sign();
    for (int sign : {-1, 1}) {
      if (s != 0 && sign != s) continue;
      const Real ystar(sign);
      for (const Cone& kf : nf) {
        // x* over y* + z*, |z*| <= delta: the hull of the two end sections.
        IntervalSet sf = cone_section(kf, ystar - delta);
        const IntervalSet hi = cone_section(kf, ystar + delta);
        if (sf.empty() || hi.empty()) continue;
        sf = IntervalSet::closed(min(sf.intervals().front().lo, hi.intervals().front().lo),
                                 max(sf.intervals().back().hi, hi.intervals().back().hi));
        for (const Cone& kg : ng) {
          const IntervalSet sg = cone_section(kg, ystar);
          if (sg.empty()) continue;
          best = min(best, minkowski_sum(sf, sg).dist(Real(0)));
        }
      }
    }
  }
  return best;
}

}  // namespace vwb
