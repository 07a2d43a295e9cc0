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

#include "vwb/affine.hpp"

#include <algorithm>

namespace vwb {

std::string Affine::str() const {
  if (a.sign() == 0) return b.str();
  std::string s = a.str() + "*x";
  if (b.sign() != 0) s += (b.sign() > 0 ? "+" : "") + b.str();
  return s;
}

Range Range::closed(const Real& lo, const Real& hi) { return make(lo, hi, false, false); }

Range Range::make(const Real& lo, const Real& hi, bool lo_open, bool hi_open) {
  Range r{lo, hi, lo_open || !lo.is_finite(), hi_open || !hi.is_finite()};
  return r;
}

bool Range::empty() const {
  if (hi < lo) return true;
  if (lo == hi) return lo_open || hi_open;
  return false;
}

bool Range::contains(const Real& x) const {
  if (empty()) return false;
  const bool above = lo_open ? lo < x : lo <= x;
  const bool below = hi_open ? x < hi : x <= hi;
  return above && below;
}

bool Range::closure_contains(const Real& x) const {
  if (empty()) return false;
  return lo <= x && x <= hi;
}

Range Range::intersect(const Range& o) const {
  Range r = *this;
  if (o.lo > r.lo || (o.lo == r.lo && o.lo_open)) {
    r.lo = o.lo;
    r.lo_open = o.lo_open || (o.lo == lo && lo_open);
  }
  if (o.hi < r.hi || (o.hi == r.hi && o.hi_open)) {
    r.hi = o.hi;
    r.hi_open = o.hi_open || (o.hi == hi && hi_open);
  }
  return r;
}

Range Range::closure() const {
  return make(lo, hi, false, false);
}

void Range::raise_lo(const Real& v) {
  if (v > lo) {
    lo = v;
    lo_open = !v.is_finite();
  }
}

void Range::lower_hi(const Real& v) {
  if (v < hi) {
    hi = v;
    hi_open = !v.is_finite();
  }
}

Range Range::to_float() const { return make(lo.to_float(), hi.to_float(), lo_open, hi_open); }

std::string Range::str() const {
  return std::string(lo_open ? "(" : "[") + lo.str() + ", " + hi.str() + (hi_open ? ")" : "]");
}

bool Range::operator==(const Range& o) const {
  return lo == o.lo && hi == o.hi && lo_open == o.lo_open && hi_open == o.hi_open;
}

Real max_of(const std::vector<Affine>& terms, const Real& x) {
  Real best = Real::neg_inf();
  for (const Affine& t : terms) best = max(best, t(x));
  return best;
}

Real min_of(const std::vector<Affine>& terms, const Real& x) {
  Real best = Real::inf();
  for (const Affine& t : terms) best = min(best, t(x));
  return best;
}

std::optional<Real> crossing(const Affine& p, const Affine& q) {
  if (p.a == q.a) return std::nullopt;
  return (q.b - p.b) / (p.a - q.a);
}

PlMinimum minimize_max_affine(const std::vector<Affine>& terms, const Real& lo, const Real& hi) {
  if (terms.empty()) return {Real::neg_inf(), lo.is_finite() ? lo : Real::neg_inf()};
  std::vector<Real> cand;
  if (lo.is_finite()) cand.push_back(lo);
  if (hi.is_finite()) cand.push_back(hi);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      if (auto c = crossing(terms[i], terms[j]); c && lo <= *c && *c <= hi) cand.push_back(*c);
    }
  }
  PlMinimum best{Real::inf(), Real::inf()};
  for (const Real& c : cand) {
    Real v = max_of(terms, c);
    if (v < best.value || (v == best.value && c < best.arg)) best = {std::move(v), c};
  }
  // Behaviour at unbounded ends: the max is eventually the steepest term.
  auto tail = [&](bool right) -> std::optional<PlMinimum> {
    Real slope = terms.front().a;
    for (const Affine& t : terms) slope = right ? max(slope, t.a) : min(slope, t.a);
    const Real dir = right ? slope : -slope;
    if (dir.sign() < 0) return PlMinimum{Real::neg_inf(), right ? Real::inf() : Real::neg_inf()};
    if (dir.sign() > 0) return std::nullopt;
    Real level = Real::neg_inf();
    for (const Affine& t : terms) {
      if (t.a == slope) level = max(level, t.b);
    }
    return PlMinimum{level, right ? Real::inf() : Real::neg_inf()};
  };
  if (hi.is_pos_inf()) {
    if (auto t = tail(true); t && t->value < best.value) best = *t;
  }
  if (lo.is_neg_inf()) {
    if (auto t = tail(false); t && t->value < best.value) best = *t;
  }
  return best;
}

PlMinimum maximize_min_affine(const std::vector<Affine>& terms, const Real& lo, const Real& hi) {
  std::vector<Affine> neg;
  neg.reserve(terms.size());
  for (const Affine& t : terms) neg.push_back(-t);
  PlMinimum m = minimize_max_affine(neg, lo, hi);
  if (terms.empty()) return {Real::inf(), m.arg};
  return {-m.value, m.arg};
}

}  // namespace vwb
