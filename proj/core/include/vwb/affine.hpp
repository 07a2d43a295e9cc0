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

#ifndef VWB_AFFINE_HPP_
#define VWB_AFFINE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "vwb/numeric.hpp"

namespace vwb {

// a*x + b.
struct Affine {
  Real a;
  Real b;

  Real operator()(const Real& x) const { return a.sign() == 0 ? b : a * x + b; }
  Affine operator+(const Affine& o) const { return {a + o.a, b + o.b}; }
  Affine operator-() const { return {-a, -b}; }
  Affine shifted(const Real& c) const { return {a, b + c}; }
  Affine scaled(const Real& c) const { return {a * c, b * c}; }
  bool operator==(const Affine& o) const { return a == o.a && b == o.b; }
  bool is_exact() const { return a.is_exact() && b.is_exact(); }
  Affine to_float() const { return {a.to_float(), b.to_float()}; }
  std::string str() const;
};

// Interval of the real line with optional open ends. Infinite ends are
// always reported as open.
struct Range {
  Real lo = Real::neg_inf();
  Real hi = Real::inf();
  bool lo_open = true;
  bool hi_open = true;

  static Range all() { return {}; }
  static Range closed(const Real& lo, const Real& hi);
  static Range point(const Real& v) { return closed(v, v); }
  static Range make(const Real& lo, const Real& hi, bool lo_open, bool hi_open);

  bool empty() const;
  bool is_point() const { return !empty() && lo == hi; }
  bool contains(const Real& x) const;
  bool closure_contains(const Real& x) const;
  // x lies in the interior, or the range extends strictly left/right of x.
  bool extends_left_of(const Real& x) const { return lo < x && closure_contains(x); }
  bool extends_right_of(const Real& x) const { return x < hi && closure_contains(x); }
  Range intersect(const Range& o) const;
  Range closure() const;
  // Tightens the lower (upper) end with a closed bound.
  void raise_lo(const Real& v);
  void lower_hi(const Real& v);
  bool is_exact() const { return lo.is_exact() && hi.is_exact(); }
  Range to_float() const;
  std::string str() const;
  bool operator==(const Range& o) const;
};

struct PlMinimum {
  Real value;
  // Minimizer; +-inf when the infimum is only approached at an unbounded end.
  Real arg;
};

// Exact infimum of max_t terms_t(u) over the closed interval [lo, hi]
// (either end may be infinite). Empty terms give -inf.
PlMinimum minimize_max_affine(const std::vector<Affine>& terms, const Real& lo, const Real& hi);
// Exact supremum of min_t terms_t(u) over [lo, hi]. Empty terms give +inf.
PlMinimum maximize_min_affine(const std::vector<Affine>& terms, const Real& lo, const Real& hi);

Real max_of(const std::vector<Affine>& terms, const Real& x);  // -inf if empty
Real min_of(const std::vector<Affine>& terms, const Real& x);  // +inf if empty

// Crossing point of two affine maps, if their slopes differ.
std::optional<Real> crossing(const Affine& p, const Affine& q);

}  // namespace vwb

#endif  // VWB_AFFINE_HPP_
