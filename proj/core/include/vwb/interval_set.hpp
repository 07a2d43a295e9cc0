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

#ifndef VWB_INTERVAL_SET_HPP_
#define VWB_INTERVAL_SET_HPP_

#include <string>
#include <vector>

#include "vwb/numeric.hpp"

namespace vwb {

// Closed interval [lo, hi]; lo may be -inf and hi may be +inf.
struct Interval {
  Real lo;
  Real hi;

  bool contains(const Real& y) const { return lo <= y && y <= hi; }
  bool is_point() const { return lo == hi; }
  bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
};

/// Finite union of pairwise disjoint closed intervals, sorted ascending,
/// separated by gaps of positive length.
class IntervalSet {
 public:
  IntervalSet() = default;

  // Sorts and merges; throws MalformedInterval when some lo > hi or an
  // endpoint is an infinity on the wrong side.
  static IntervalSet normalize(std::vector<Interval> raw);
  static IntervalSet point(const Real& v);
  static IntervalSet closed(const Real& lo, const Real& hi);
  static IntervalSet whole();

  const std::vector<Interval>& intervals() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  std::size_t size() const { return parts_.size(); }
  bool contains(const Real& y) const;
  bool is_singleton() const { return parts_.size() == 1 && parts_[0].is_point(); }
  bool is_exact() const;

  IntervalSet translate(const Real& k) const;
  IntervalSet unite(const IntervalSet& o) const;
  IntervalSet intersect(const IntervalSet& o) const;
  IntervalSet clip(const Real& lo, const Real& hi) const;
  IntervalSet to_float() const;

  // d(y, S); +inf for the empty set.
  Real dist(const Real& y) const;
  // Distance from y to the complement of the set (0 when y is outside).
  Real dist_to_complement(const Real& y) const;
  // Finite endpoints in ascending order.
  std::vector<Real> endpoints() const;

  std::string str() const;
  bool operator==(const IntervalSet& o) const { return parts_ == o.parts_; }

 private:
  std::vector<Interval> parts_;
};

Real dist_point_to_set(const Real& y, const IntervalSet& s);
IntervalSet minkowski_sum(const IntervalSet& a, const IntervalSet& b);

}  // namespace vwb

#endif  // VWB_INTERVAL_SET_HPP_
