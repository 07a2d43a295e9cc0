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

#include "doctest.h"
#include "support.hpp"
#include "vwb/errors.hpp"
#include "vwb/numeric.hpp"

using namespace vwb;
using vwb::testing::q;

TEST_CASE("parse reads decimals and fractions exactly") {
  CHECK(Real::parse("0.1") == q(1, 10));
  CHECK(Real::parse("0.055") == q(11, 200));
  CHECK(Real::parse("010/3") == q(10, 3));
  CHECK(Real::parse("-3/6") == q(-1, 2));
  CHECK(Real::parse("-3/6").str() == "-1/2");
  CHECK(Real::parse("1e-3") == q(1, 1000));
  CHECK(Real::parse("2.5E2") == q(250));
  CHECK(Real::parse("inf").is_pos_inf());
  CHECK(Real::parse("+inf").is_pos_inf());
  CHECK(Real::parse("-inf").is_neg_inf());
  CHECK(Real::parse("0.1").is_exact());
  CHECK_THROWS_AS(Real::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Real::parse("abc"), ParseError);
}

TEST_CASE("canonical text") {
  CHECK(q(6, 4).str() == "3/2");
  CHECK(q(-2).str() == "-2");
  CHECK(Real::inf().str() == "inf");
  CHECK(Real::neg_inf().str() == "-inf");
  CHECK(Real::from_double(0.25).str() == "0.25");
}

TEST_CASE("exact arithmetic has no rounding") {
  Real s(0);
  for (int i = 0; i < 10; ++i) s += Real::parse("0.1");
  CHECK(s == Real(1));
  CHECK(s.identical(Real(1)));
  CHECK((q(1, 3) * Real(3)).identical(Real(1)));
}

TEST_CASE("mixing backends yields a double") {
  const Real v = q(1, 2) + Real::from_double(0.25);
  CHECK_FALSE(v.is_exact());
  CHECK(v.backend() == Backend::floating);
  CHECK(v.to_double() == doctest::Approx(0.75));
}

TEST_CASE("infinities") {
  const Real inf = Real::inf();
  CHECK(inf + Real(5) == inf);
  CHECK(-inf == Real::neg_inf());
  CHECK(Real(3) / inf == Real(0));
  CHECK(inf * Real(-2) == Real::neg_inf());
  CHECK(inf > q(1000000));
  CHECK(Real::neg_inf() < q(-1000000));
  CHECK_THROWS_AS(inf - inf, IndeterminateForm);
  CHECK_THROWS_AS(inf * Real(0), IndeterminateForm);
  CHECK_THROWS_AS(Real(1) / Real(0), IndeterminateForm);
  CHECK_THROWS_AS(inf / inf, IndeterminateForm);
}

TEST_CASE("mixed comparison is exact") {
  // 0.1 as a double is slightly above 1/10.
  CHECK(Real::from_double(0.1) > q(1, 10));
  CHECK(Real::from_double(0.5) == q(1, 2));
}

TEST_CASE("tolerances") {
  CHECK(approx_equal(Real::from_double(1.0 + 1e-12), Real(1)));
  CHECK_FALSE(approx_equal(q(1) + q(1, 1000000000000L), Real(1)));
  CHECK(approx_le(Real::from_double(1.0 + 1e-12), Real(1)));
  CHECK_FALSE(approx_le(q(2), q(1), 0.0));
  CHECK(positive_part(q(-3)) == Real(0));
  CHECK(positive_part(q(3, 2)) == q(3, 2));
  CHECK(midpoint(q(0), q(1)) == q(1, 2));
}

TEST_CASE("backend names") {
  CHECK(to_string(Backend::rational) == "rational");
  CHECK(backend_from_string("float") == Backend::floating);
  CHECK_THROWS(backend_from_string("double-double"));
}
