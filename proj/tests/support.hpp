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

// Hand-built fixtures and small oracles shared by the test binaries.

#ifndef VWB_TESTS_SUPPORT_HPP_
#define VWB_TESTS_SUPPORT_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "vwb/multifunction.hpp"
#include "vwb/numeric.hpp"
#include "vwb/sampling.hpp"

namespace vwb::testing {

inline Real q(long n, long d = 1) { return Real::rational(n, d); }
inline Real R(const char* s) { return Real::parse(s); }

// F(x) = [-x, +inf) for x >= 0, {-1} for x < 0.
inline PMF counter_f() {
  Piece right{"right", Range::make(q(0), Real::inf(), false, true), {Band{std::nullopt, {Affine{q(-1), q(0)}}, {}}}};
  Piece left{"left", Range::make(Real::neg_inf(), q(0), true, true),
             {Band{std::nullopt, {Affine{q(0), q(-1)}}, {Affine{q(0), q(-1)}}}}};
  return PMF("F", Range::all(), {right, left});
}

// G(x) = {0, 1}.
inline PMF counter_g() { return PMF::constant("G", IntervalSet::normalize({{q(0), q(0)}, {q(1), q(1)}})); }

inline IntervalSet iv(const Real& lo, const Real& hi) { return IntervalSet::closed(lo, hi); }

// Deterministic generator; every property test seeds its own.
class Gen {
 public:
  explicit Gen(std::uint32_t seed) : rng_(seed) {}
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  // Rational n/d with |n| <= num_max, d in [1, den_max].
  Real rational(long num_max, long den_max) { return q(integer(-num_max, num_max), integer(1, den_max)); }
  Real nonzero(long num_max, long den_max) {
    for (;;) {
      Real v = rational(num_max, den_max);
      if (v.sign() != 0) return v;
    }
  }
  bool coin() { return integer(0, 1) == 1; }

 private:
  std::mt19937 rng_;
};

inline NeighborhoodSchedule short_schedule(int depth = 6) {
  NeighborhoodSchedule s;
  s.depth = depth;
  return s;
}

}  // namespace vwb::testing

namespace doctest {
template <>
struct StringMaker<vwb::Real> {
  static String convert(const vwb::Real& v) { return v.str().c_str(); }
};
template <>
struct StringMaker<vwb::IntervalSet> {
  static String convert(const vwb::IntervalSet& v) { return v.str().c_str(); }
};
}  // namespace doctest

#endif  // VWB_TESTS_SUPPORT_HPP_
