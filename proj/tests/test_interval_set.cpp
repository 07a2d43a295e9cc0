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

#include <algorithm>

#include "doctest.h"
#include "support.hpp"
#include "vwb/errors.hpp"
#include "vwb/interval_set.hpp"

using namespace vwb;
using namespace vwb::testing;

namespace {

IntervalSet random_set(Gen& g) {
  std::vector<Interval> raw;
  const long n = g.integer(0, 3);
  for (long i = 0; i < n; ++i) {
    Real a = g.rational(6, 4);
    Real b = a + q(g.integer(0, 8), 4);
    if (g.integer(0, 5) == 0) b = Real::inf();
    raw.push_back({a, b});
  }
  return IntervalSet::normalize(raw);
}

}  // namespace

TEST_CASE("normalize") {
  CHECK(IntervalSet::normalize({{q(0), q(2)}, {q(1), q(3)}}) == iv(q(0), q(3)));
  CHECK_THROWS_AS(IntervalSet::normalize({{q(5), q(1)}}), MalformedInterval);
  const IntervalSet s = IntervalSet::normalize({{q(0), q(1)}, {q(2), Real::inf()}});
  REQUIRE(s.size() == 2);
  CHECK(s.intervals()[1].lo == q(2));
  CHECK(s.intervals()[1].hi.is_pos_inf());
  // Touching intervals merge.
  CHECK(IntervalSet::normalize({{q(0), q(1)}, {q(1), q(2)}}) == iv(q(0), q(2)));
  CHECK_THROWS_AS(IntervalSet::normalize({{Real::inf(), Real::inf()}}), MalformedInterval);
}

TEST_CASE("normalize is idempotent") {
  Gen g(11);
  for (int t = 0; t < 200; ++t) {
    const IntervalSet s = random_set(g);
    CHECK(IntervalSet::normalize(s.intervals()) == s);
  }
}

TEST_CASE("dist_point_to_set") {
  const IntervalSet pair = IntervalSet::normalize({{q(-1), q(-1)}, {q(0), q(0)}});
  CHECK(dist_point_to_set(R("-0.005"), pair) == q(1, 200));
  CHECK(dist_point_to_set(q(7), IntervalSet()).is_pos_inf());
  const IntervalSet s = IntervalSet::normalize({{q(0), q(1)}, {q(5), Real::inf()}});
  CHECK(dist_point_to_set(q(3), s) == q(2));
  CHECK(dist_point_to_set(q(100), s) == q(0));
}

TEST_CASE("distance to complement") {
  CHECK(iv(q(0), q(4)).dist_to_complement(q(1)) == q(1));
  CHECK(iv(q(0), q(4)).dist_to_complement(q(9)) == q(0));
  CHECK(IntervalSet::whole().dist_to_complement(q(0)).is_pos_inf());
  CHECK(IntervalSet::point(q(2)).dist_to_complement(q(2)) == q(0));
}

TEST_CASE("minkowski_sum") {
  const IntervalSet pair = IntervalSet::normalize({{q(0), q(0)}, {q(1), q(1)}});
  const IntervalSet ray = iv(q(0), Real::inf());
  // Oracle: union of the two translates of the ray.
  const IntervalSet oracle = ray.translate(q(0)).unite(ray.translate(q(1)));
  CHECK(minkowski_sum(ray, pair) == oracle);
  CHECK(oracle == ray);
  CHECK(minkowski_sum(IntervalSet::point(q(-1)), pair) ==
        IntervalSet::normalize({{q(-1), q(-1)}, {q(0), q(0)}}));
  CHECK(minkowski_sum(IntervalSet(), iv(q(0), q(1))).empty());
  CHECK(minkowski_sum(iv(q(0), Real::inf()), iv(Real::neg_inf(), q(0))) == IntervalSet::whole());
}

TEST_CASE("property: distance is 1-Lipschitz") {
  Gen g(7);
  for (int t = 0; t < 300; ++t) {
    const IntervalSet s = random_set(g);
    if (s.empty()) continue;
    const Real y = g.rational(10, 6);
    const Real z = g.rational(10, 6);
    CHECK(abs(s.dist(y) - s.dist(z)) <= abs(y - z));
  }
}

TEST_CASE("property: minkowski_sum is commutative and associative") {
  Gen g(2024);
  for (int t = 0; t < 200; ++t) {
    const IntervalSet a = random_set(g);
    const IntervalSet b = random_set(g);
    const IntervalSet c = random_set(g);
    CHECK(minkowski_sum(a, b) == minkowski_sum(b, a));
    CHECK(minkowski_sum(minkowski_sum(a, b), c) == minkowski_sum(a, minkowski_sum(b, c)));
  }
}

TEST_CASE("property: exact results do not depend on evaluation order") {
  Gen g(5);
  for (int t = 0; t < 100; ++t) {
    std::vector<Interval> raw;
    for (int i = 0; i < 5; ++i) {
      const Real a = g.rational(9, 7);
      raw.push_back({a, a + q(g.integer(0, 5), 3)});
    }
    const std::string first = IntervalSet::normalize(raw).str();
    std::reverse(raw.begin(), raw.end());
    CHECK(IntervalSet::normalize(raw).str() == first);
    std::rotate(raw.begin(), raw.begin() + 2, raw.end());
    CHECK(IntervalSet::normalize(raw).str() == first);
  }
}

TEST_CASE("set operations") {
  const IntervalSet a = IntervalSet::normalize({{q(0), q(2)}, {q(4), q(6)}});
  CHECK(a.intersect(iv(q(1), q(5))) == IntervalSet::normalize({{q(1), q(2)}, {q(4), q(5)}}));
  CHECK(a.clip(q(3), q(10)) == iv(q(4), q(6)));
  CHECK(a.endpoints() == std::vector<Real>{q(0), q(2), q(4), q(6)});
  CHECK(a.contains(q(5)));
  CHECK_FALSE(a.contains(q(3)));
  CHECK(IntervalSet::point(q(2)).is_singleton());
  CHECK(a.str() == "[0, 2] U [4, 6]");
  CHECK(IntervalSet::normalize({{q(-1), q(-1)}, {q(0), Real::inf()}}).str() == "{-1} U [0, inf)");
}
