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

#include "vwb/interval_set.hpp"

#include <algorithm>

#include "vwb/errors.hpp"

namespace vwb {

IntervalSet IntervalSet::normalize(std::vector<Interval> raw) {
  for (const Interval& iv : raw) {
    if (iv.lo > iv.hi || iv.lo.is_pos_inf() || iv.hi.is_neg_inf()) {
      throw MalformedInterval("malformed interval [" + iv.lo.str() + ", " + iv.hi.str() + "]");
    }
  }
  std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.hi < b.hi;
  });
  IntervalSet out;
  for (Interval& iv : raw) {
    if (!out.parts_.empty() && iv.lo <= out.parts_.back().hi) {
      if (out.parts_.back().hi < iv.hi) out.parts_.back().hi = iv.hi;
    } else {
      out.parts_.push_back(std::move(iv));
    }
  }
  return out;
}

IntervalSet IntervalSet::point(const Real& v) { return normalize({{v, v}}); }
IntervalSet IntervalSet::closed(const Real& lo, const Real& hi) { return normalize({{lo, hi}}); }
IntervalSet IntervalSet::whole() { return normalize({{Real::neg_inf(), Real::inf()}}); }

bool IntervalSet::contains(const Real& y) const {
  return std::any_of(parts_.begin(), parts_.end(), [&](const Interval& iv) { return iv.contains(y); });
}

bool IntervalSet::is_exact() const {
  return std::all_of(parts_.begin(), parts_.end(),
                     [](const Interval& iv) { return iv.lo.is_exact() && iv.hi.is_exact(); });
}

IntervalSet IntervalSet::translate(const Real& k) const {
  IntervalSet out = *this;
  for (Interval& iv : out.parts_) {
    iv.lo += k;
    iv.hi += k;
  }
  return out;
}

IntervalSet IntervalSet::unite(const IntervalSet& o) const {
  std::vector<Interval> all = parts_;
  all.insert(all.end(), o.parts_.begin(), o.parts_.end());
  return normalize(std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet& o) const {
  std::vector<Interval> out;
  for (const Interval& a : parts_) {
    for (const Interval& b : o.parts_) {
      Real lo = max(a.lo, b.lo);
      Real hi = min(a.hi, b.hi);
      if (lo <= hi) out.push_back({std::move(lo), std::move(hi)});
    }
  }
  return normalize(std::move(out));
}

IntervalSet IntervalSet::clip(const Real& lo, const Real& hi) const {
  if (hi < lo) return {};
  return intersect(closed(lo, hi));
}

IntervalSet IntervalSet::to_float() const {
  IntervalSet out = *this;
  for (Interval& iv : out.parts_) {
    iv.lo = iv.lo.to_float();
    iv.hi = iv.hi.to_float();
  }
  return out;
}

Real IntervalSet::dist(const Real& y) const {
  Real best = Real::inf();
  for (const Interval& iv : parts_) {
    if (iv.contains(y)) return y.is_exact() ? Real(0) : Real::from_double(0.0);
    best = min(best, y < iv.lo ? iv.lo - y : y - iv.hi);
  }
  return best;
}

Real IntervalSet::dist_to_complement(const Real& y) const {
  for (const Interval& iv : parts_) {
    if (iv.contains(y)) return min(y - iv.lo, iv.hi - y);
  }
  return y.is_exact() ? Real(0) : Real::from_double(0.0);
}

std::vector<Real> IntervalSet::endpoints() const {
  std::vector<Real> out;
  for (const Interval& iv : parts_) {
    if (iv.lo.is_finite()) out.push_back(iv.lo);
    if (iv.hi.is_finite() && iv.hi != iv.lo) out.push_back(iv.hi);
  }
  return out;
}

std::string IntervalSet::str() const {
  if (parts_.empty()) return "{}";
  std::string s;
  for (const Interval& iv : parts_) {
    if (!s.empty()) s += " U ";
    if (iv.is_point()) {
      s += "{" + iv.lo.str() + "}";
    } else {
      s += (iv.lo.is_finite() ? "[" : "(") + iv.lo.str() + ", " + iv.hi.str() +
           (iv.hi.is_finite() ? "]" : ")");
    }
  }
  return s;
}

Real dist_point_to_set(const Real& y, const IntervalSet& s) { return s.dist(y); }

IntervalSet minkowski_sum(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> out;
  out.reserve(a.size() * b.size());
  for (const Interval& p : a.intervals()) {
    for (const Interval& q : b.intervals()) out.push_back({p.lo + q.lo, p.hi + q.hi});
  }
  return IntervalSet::normalize(std::move(out));
}

}  // namespace vwb
