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

#include "vwb/multifunction.hpp"

#include <algorithm>

#include "vwb/errors.hpp"
#include "vwb/sampling.hpp"

namespace vwb {

namespace {

std::vector<Affine> affine_to_float(const std::vector<Affine>& v) {
  std::vector<Affine> out;
  out.reserve(v.size());
  for (const Affine& t : v) out.push_back(t.to_float());
  return out;
}

bool affine_exact(const std::vector<Affine>& v) {
  return std::all_of(v.begin(), v.end(), [](const Affine& t) { return t.is_exact(); });
}

std::vector<Affine> pairwise_sums(const std::vector<Affine>& p, const std::vector<Affine>& q) {
  std::vector<Affine> out;
  for (const Affine& s : p) {
    for (const Affine& t : q) out.push_back(s + t);
  }
  return out;
}

std::vector<Cell> cells_of(const Piece& piece) {
  std::vector<Cell> out;
  for (const Band& b : piece.bands) {
    Range r = b.where ? piece.domain.intersect(*b.where) : piece.domain;
    if (auto c = Cell::make(r, b.lo, b.hi)) out.push_back(std::move(*c));
  }
  return out;
}


}  // namespace

std::optional<Cell> Cell::make(Range x, std::vector<Affine> lower, std::vector<Affine> upper) {
  for (const Affine& l : lower) {
    for (const Affine& u : upper) {
      // l(x) <= u(x)  <=>  (l.a - u.a) x <= u.b - l.b
      const Real d = l.a - u.a;
      const Real c = u.b - l.b;
      if (d.sign() > 0) {
        x.lower_hi(c / d);
      } else if (d.sign() < 0) {
        x.raise_lo(c / d);
      } else if (c.sign() < 0) {
        return std::nullopt;
      }
    }
  }
  if (x.empty()) return std::nullopt;
  Cell cell{std::move(x), std::move(lower), std::move(upper)};
  return cell;
}

std::optional<Interval> Cell::section(const Real& u) const {
  if (!x.contains(u)) return std::nullopt;
  return closure_section(u);
}

std::optional<Interval> Cell::closure_section(const Real& u) const {
  if (!x.closure_contains(u)) return std::nullopt;
  Real lo = lower_at(u);
  Real hi = upper_at(u);
  if (hi < lo) return std::nullopt;
  return Interval{std::move(lo), std::move(hi)};
}

std::optional<Cell> Cell::restricted(const Range& r) const {
  return make(x.intersect(r), lower, upper);
}

std::optional<Cell> Cell::swapped() const {
  // Half-planes alpha*X + beta*Y <= c in the swapped frame (X = y, Y = x).
  struct HalfPlane {
    Real alpha, beta, c;
  };
  std::vector<HalfPlane> hp;
  if (x.lo.is_finite()) hp.push_back({Real(0), Real(-1), -x.lo});
  if (x.hi.is_finite()) hp.push_back({Real(0), Real(1), x.hi});
  for (const Affine& l : lower) hp.push_back({Real(-1), l.a, -l.b});
  for (const Affine& u : upper) hp.push_back({Real(1), -u.a, u.b});
  Range r = Range::all();
  std::vector<Affine> lo, hi;
  for (const HalfPlane& h : hp) {
    if (h.beta.sign() > 0) {
      hi.push_back({-h.alpha / h.beta, h.c / h.beta});
    } else if (h.beta.sign() < 0) {
      lo.push_back({-h.alpha / h.beta, h.c / h.beta});
    } else if (h.alpha.sign() > 0) {
      r.lower_hi(h.c / h.alpha);
    } else if (h.alpha.sign() < 0) {
      r.raise_lo(h.c / h.alpha);
    } else if (h.c.sign() < 0) {
      return std::nullopt;
    }
  }
  return make(r, std::move(lo), std::move(hi));
}

Cell Cell::shifted(const Real& k) const {
  Cell c = *this;
  for (Affine& t : c.lower) t = t.shifted(k);
  for (Affine& t : c.upper) t = t.shifted(k);
  return c;
}

std::vector<Real> Cell::breakpoints() const {
  std::vector<Real> out;
  if (x.lo.is_finite()) out.push_back(x.lo);
  if (x.hi.is_finite()) out.push_back(x.hi);
  std::vector<Affine> all = lower;
  all.insert(all.end(), upper.begin(), upper.end());
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (auto c = crossing(all[i], all[j]); c && x.closure_contains(*c)) out.push_back(*c);
    }
  }
  sort_unique(out);
  return out;
}

bool Cell::is_exact() const { return x.is_exact() && affine_exact(lower) && affine_exact(upper); }

Cell Cell::to_float() const { return {x.to_float(), affine_to_float(lower), affine_to_float(upper)}; }

PiecewiseMultifunction::PiecewiseMultifunction(std::string name, Range domain, std::vector<Piece> pieces)
    : name_(std::move(name)), domain_(std::move(domain)), pieces_(std::move(pieces)) {
  for (const Piece& p : pieces_) {
    for (Cell& c : cells_of(p)) cells_.push_back(std::move(c));
  }
}

PiecewiseMultifunction PiecewiseMultifunction::affine(const std::string& name, const Real& a, const Real& b) {
  Affine t{a, b};
  return PMF(name, Range::all(), {Piece{"graph", Range::all(), {Band{std::nullopt, {t}, {t}}}}});
}

PiecewiseMultifunction PiecewiseMultifunction::constant(const std::string& name, const IntervalSet& s) {
  Piece p{"const", Range::all(), {}};
  for (const Interval& iv : s.intervals()) {
    Band b;
    if (iv.lo.is_finite()) b.lo.push_back({Real(0), iv.lo});
    if (iv.hi.is_finite()) b.hi.push_back({Real(0), iv.hi});
    p.bands.push_back(std::move(b));
  }
  return PMF(name, Range::all(), {std::move(p)});
}

PiecewiseMultifunction PiecewiseMultifunction::from_cells(const std::string& name, Range domain,
                                                          const std::vector<Cell>& cells) {
  Piece p{"cells", domain, {}};
  for (const Cell& c : cells) p.bands.push_back(Band{c.x, c.lower, c.upper});
  return PMF(name, std::move(domain), {std::move(p)});
}

void PiecewiseMultifunction::validate() const {
  if (domain_.empty()) throw ValidationError(name_ + ": empty domain");
  if (pieces_.empty()) throw ValidationError(name_ + ": no pieces");
  std::vector<const Piece*> order;
  for (const Piece& p : pieces_) {
    if (p.domain.empty()) throw ValidationError(name_ + ": piece '" + p.name + "' has an empty domain");
    if (p.domain.intersect(domain_) != p.domain) {
      throw ValidationError(name_ + ": piece '" + p.name + "' leaves the declared domain");
    }
    order.push_back(&p);
  }
  std::sort(order.begin(), order.end(), [](const Piece* a, const Piece* b) {
    if (a->domain.lo != b->domain.lo) return a->domain.lo < b->domain.lo;
    return a->domain.hi < b->domain.hi;
  });
  const Range& first = order.front()->domain;
  const Range& last = order.back()->domain;
  if (first.lo != domain_.lo || (first.lo_open && !domain_.lo_open)) {
    throw ValidationError(name_ + ": pieces do not cover the left end of the domain");
  }
  if (last.hi != domain_.hi || (last.hi_open && !domain_.hi_open)) {
    throw ValidationError(name_ + ": pieces do not cover the right end of the domain");
  }
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    const Range& p = order[i]->domain;
    const Range& q = order[i + 1]->domain;
    if (q.lo < p.hi) {
      throw ValidationError(name_ + ": pieces '" + order[i]->name + "' and '" + order[i + 1]->name +
                            "' overlap beyond an endpoint");
    }
    if (p.hi < q.lo || (p.hi_open && q.lo_open)) {
      throw ValidationError(name_ + ": gap between pieces '" + order[i]->name + "' and '" +
                            order[i + 1]->name + "'");
    }
  }
}

IntervalSet PiecewiseMultifunction::image(const Real& x) const {
  if (!domain_.contains(x)) throw OutOfDomain(name_ + ": " + x.str() + " outside " + domain_.str());
  return image_or_empty(x);
}

IntervalSet PiecewiseMultifunction::image_or_empty(const Real& x) const {
  if (!domain_.contains(x)) return {};
  std::vector<Interval> parts;
  for (const Cell& c : cells_) {
    if (auto s = c.section(x)) parts.push_back(std::move(*s));
  }
  return IntervalSet::normalize(std::move(parts));
}

IntervalSet PiecewiseMultifunction::closure_fiber(const Real& x) const {
  std::vector<Interval> parts;
  for (const Cell& c : cells_) {
    if (auto s = c.closure_section(x)) parts.push_back(std::move(*s));
  }
  return IntervalSet::normalize(std::move(parts));
}

IntervalSet PiecewiseMultifunction::preimage(const Real& y) const {
  std::vector<Interval> parts;
  for (const Cell& c : cells_) {
    Range r = c.x;
    bool feasible = true;
    // l(x) <= y for lower terms, u(x) >= y for upper terms.
    auto bound = [&](const Affine& t, bool is_lower) {
      const Real rhs = y - t.b;
      const int s = t.a.sign() * (is_lower ? 1 : -1);
      if (t.a.sign() == 0) {
        if (is_lower ? rhs.sign() < 0 : rhs.sign() > 0) feasible = false;
      } else if (s > 0) {
        r.lower_hi(rhs / t.a);
      } else {
        r.raise_lo(rhs / t.a);
      }
    };
    for (const Affine& t : c.lower) bound(t, true);
    for (const Affine& t : c.upper) bound(t, false);
    if (feasible && !r.empty()) parts.push_back({r.lo, r.hi});
  }
  return IntervalSet::normalize(std::move(parts));
}

IntervalSet PiecewiseMultifunction::image_of_interval(const Real& lo, const Real& hi) const {
  std::vector<Interval> parts;
  for (const Cell& c : cells_) {
    Range r = c.x.closure().intersect(domain_.closure()).intersect(Range::closed(lo, hi));
    if (r.empty()) continue;
    Real bottom = minimize_max_affine(c.lower, r.lo, r.hi).value;
    Real top = maximize_min_affine(c.upper, r.lo, r.hi).value;
    parts.push_back({std::move(bottom), std::move(top)});
  }
  return IntervalSet::normalize(std::move(parts));
}

PiecewiseMultifunction PiecewiseMultifunction::inverse() const {
  std::vector<Cell> swapped;
  for (const Cell& c : cells_) {
    if (auto s = c.swapped()) swapped.push_back(std::move(*s));
  }
  return from_cells(name_ + "^-1", Range::all(), swapped);
}

PiecewiseMultifunction PiecewiseMultifunction::renamed(const std::string& name) const {
  PMF out = *this;
  out.name_ = name;
  return out;
}

std::vector<Real> PiecewiseMultifunction::breakpoints() const {
  std::vector<Real> out;
  for (const Piece& p : pieces_) {
    if (p.domain.lo.is_finite()) out.push_back(p.domain.lo);
    if (p.domain.hi.is_finite()) out.push_back(p.domain.hi);
  }
  for (const Cell& c : cells_) {
    for (Real& b : c.breakpoints()) out.push_back(std::move(b));
  }
  sort_unique(out);
  return out;
}

bool PiecewiseMultifunction::is_exact() const {
  if (!domain_.is_exact()) return false;
  for (const Piece& p : pieces_) {
    if (!p.domain.is_exact()) return false;
    for (const Band& b : p.bands) {
      if ((b.where && !b.where->is_exact()) || !affine_exact(b.lo) || !affine_exact(b.hi)) return false;
    }
  }
  return true;
}

PiecewiseMultifunction PiecewiseMultifunction::to_float() const {
  std::vector<Piece> pieces = pieces_;
  for (Piece& p : pieces) {
    p.domain = p.domain.to_float();
    for (Band& b : p.bands) {
      if (b.where) b.where = b.where->to_float();
      b.lo = affine_to_float(b.lo);
      b.hi = affine_to_float(b.hi);
    }
  }
  return PMF(name_, domain_.to_float(), std::move(pieces));
}

PiecewiseMultifunction sum_mf(const PiecewiseMultifunction& f, const PiecewiseMultifunction& g) {
  std::vector<Piece> pieces;
  for (const Piece& pf : f.pieces()) {
    for (const Piece& pg : g.pieces()) {
      Range dom = pf.domain.intersect(pg.domain);
      if (dom.empty()) continue;
      Piece p{pf.name + "+" + pg.name, dom, {}};
      for (const Cell& cf : cells_of(pf)) {
        for (const Cell& cg : cells_of(pg)) {
          Range r = cf.x.intersect(cg.x);
          if (r.empty()) continue;
          p.bands.push_back(Band{r, pairwise_sums(cf.lower, cg.lower), pairwise_sums(cf.upper, cg.upper)});
        }
      }
      pieces.push_back(std::move(p));
    }
  }
  return PMF(f.name() + "+" + g.name(), f.domain().intersect(g.domain()), std::move(pieces));
}

IntervalSet image(const PiecewiseMultifunction& f, const Real& x) { return f.image(x); }

Real inverse_distance(const PiecewiseMultifunction& f, const Real& y, const Real& x) {
  return f.preimage(y).dist(x);
}

std::string to_string(ClosedVerdict v) {
  switch (v) {
    case ClosedVerdict::closed: return "closed";
    case ClosedVerdict::violation: return "violation";
    case ClosedVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

// First point of span not covered by s, if any.
std::optional<Real> first_uncovered_point(const Interval& span, const IntervalSet& s) {
  Real cursor = span.lo;
  bool need_cursor = true;  // cursor itself still uncovered
  for (const Interval& iv : s.intervals()) {
    if (iv.hi < cursor || (iv.hi == cursor && !need_cursor)) continue;
    if (need_cursor && cursor < iv.lo) return cursor;
    if (!need_cursor && cursor < iv.lo) {
      if (span.hi < iv.lo) return span.hi;
      return midpoint(cursor, iv.lo);
    }
    if (span.hi <= iv.hi) return std::nullopt;
    cursor = iv.hi;
    need_cursor = false;
  }
  if (need_cursor) return cursor;
  if (cursor < span.hi) return span.hi.is_finite() ? span.hi : cursor + Real(1);
  return std::nullopt;
}

}  // namespace

ClosednessReport graph_closedness_probe(const PiecewiseMultifunction& f, const Region& region) {
  ClosednessReport rep;
  rep.backend = f.backend();
  for (const Cell& c : f.cells()) {
    for (int side = 0; side < 2; ++side) {
      const bool open = side == 0 ? c.x.lo_open : c.x.hi_open;
      const Real& e = side == 0 ? c.x.lo : c.x.hi;
      if (!open || !e.is_finite()) continue;
      if (e < region.x_lo || region.x_hi < e || !f.domain().contains(e)) continue;
      ++rep.boundaries_checked;
      auto sec = c.closure_section(e);
      if (!sec) continue;
      Interval clipped{max(sec->lo, region.y_lo), min(sec->hi, region.y_hi)};
      if (clipped.hi < clipped.lo) continue;
      if (auto y = first_uncovered_point(clipped, f.image(e))) {
        rep.verdict = ClosedVerdict::violation;
        rep.witness = std::make_pair(e, *y);
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace vwb
