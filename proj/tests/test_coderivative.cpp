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

#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "vwb/coderivative.hpp"
#include "vwb/epigraph.hpp"
#include "vwb/errors.hpp"
#include "vwb/regularity.hpp"

using namespace vwb;
using namespace vwb::testing;

namespace {

Vec v(const Real& a, const Real& b) { return {a, b}; }

PolyhedralSet halfplanes(std::vector<HalfSpace> rows) { return PolyhedralSet(2, std::move(rows)); }

PMF lin(const Real& a, const Real& b = Real(0)) { return PMF::affine("L", a, b); }

PMF ray_up(const Real& a) {
  return PMF("Ray", Range::all(), {Piece{"all", Range::all(), {Band{std::nullopt, {Affine{a, q(0)}}, {}}}}});
}

PMF kinked(const Real& a, const Real& b) {
  auto band = [](const Real& s) { return Band{std::nullopt, {Affine{s, q(0)}}, {Affine{s, q(0)}}}; };
  return PMF("kink", Range::all(),
             {Piece{"left", Range::make(Real::neg_inf(), q(0), true, true), {band(a)}},
              Piece{"right", Range::make(q(0), Real::inf(), false, true), {band(b)}}});
}

// Normal cone oracle for a convex polygon: generators are the active rows.
bool oracle_in_normal(const PolyhedralSet& p, const Vec& at, const Vec& d) {
  std::vector<Vec> gens;
  for (std::size_t i : p.active(at)) gens.push_back(p.rows()[i].a);
  // d in cone(gens) iff <d, t> <= 0 for every tangent direction t; checked
  // on a ring of directions plus the boundary directions.
  std::vector<Vec> probes;
  for (long i = -8; i <= 8; ++i) {
    probes.push_back(v(q(i, 8), q(1)));
    probes.push_back(v(q(i, 8), q(-1)));
    probes.push_back(v(q(1), q(i, 8)));
    probes.push_back(v(q(-1), q(i, 8)));
  }
  for (const Vec& g : gens) {
    probes.push_back(v(-g[1], g[0]));
    probes.push_back(v(g[1], -g[0]));
  }
  for (const Vec& t : probes) {
    bool tangent = true;
    for (const Vec& g : gens) tangent = tangent && dot(g, t).sign() <= 0;
    if (tangent && dot(d, t).sign() > 0) return false;
  }
  return true;
}

struct Pair {
  const char* name;
  PMF f, g;
  Real lambda;
};

std::vector<Pair> kernel_corpus() {
  return {
      {"identity/zero", lin(q(1)), lin(q(0)), q(0)},
      {"zero/zero", lin(q(0)), lin(q(0)), q(0)},
      {"affine-tight", lin(q(2)), lin(q(-1, 2)), q(1, 2)},
      {"counter/zero", counter_f(), lin(q(0)), q(0)},
      {"cancelling", lin(q(1)), lin(q(-1)), q(1)},
      {"ray/zero", ray_up(q(1)), lin(q(0)), q(0)},
      {"flat-ray/zero", ray_up(q(0)), lin(q(0)), q(0)},
  };
}

}  // namespace

TEST_SUITE("cones") {
  TEST_CASE("generators and membership") {
    const Cone c = Cone::generated_by(2, {v(q(1), q(-1)), v(q(-1), q(-1))});
    CHECK(c.contains(v(q(0), q(-1))));
    CHECK(c.contains(v(q(2), q(-2))));
    CHECK_FALSE(c.contains(v(q(1), q(0))));
    CHECK(c.str() == "cone{(-1, -1), (1, -1)}");
    CHECK(Cone::zero(2).is_zero());
    CHECK(Cone::zero(2).str() == "{0}");
    CHECK(Cone::whole(2).generators().size() == 4);
    CHECK(Cone::whole(2).polar() == Cone::zero(2));
    CHECK(Cone::zero(2).polar() == Cone::whole(2));
    // Half-plane and line.
    const Cone h(2, {v(q(0), q(1))});
    CHECK(h.generators().size() == 3);
    CHECK(h.polar() == Cone::generated_by(2, {v(q(0), q(1))}));
    const Cone line = Cone::generated_by(2, {v(q(1), q(2)), v(q(-1), q(-2))});
    CHECK(line.contains(v(q(-3), q(-6))));
    CHECK_FALSE(line.contains(v(q(1), q(0))));
    CHECK_THROWS_AS(Cone(3, {Vec{q(1), q(0), q(0)}}).generators(), UnsupportedDimension);
    CHECK(Cone(3, {Vec{q(1), q(0), q(0)}}).contains(Vec{q(-1), q(5), q(5)}));
  }

  TEST_CASE("frechet normal cones") {
    const PolyhedralUnion epi_abs{halfplanes({{v(q(1), q(-1)), q(0)}, {v(q(-1), q(-1)), q(0)}})};
    CHECK(frechet_normal_cone(epi_abs, v(q(0), q(0))) == Cone::generated_by(2, {v(q(1), q(-1)), v(q(-1), q(-1))}));
    CHECK(frechet_normal_cone(epi_abs, v(q(0), q(1))).is_zero());
    const PolyhedralUnion upper{halfplanes({{v(q(0), q(-1)), q(0)}})};
    CHECK(frechet_normal_cone(upper, v(q(1), q(0))) == Cone::generated_by(2, {v(q(0), q(-1))}));
    CHECK_THROWS_AS(frechet_normal_cone(upper, v(q(0), q(-1))), PointNotInSet);
  }

  TEST_CASE("limiting normal cones") {
    const PolyhedralUnion lines{halfplanes({{v(q(0), q(1)), q(0)}, {v(q(0), q(-1)), q(0)}}),
                                halfplanes({{v(q(0), q(1)), q(1)}, {v(q(0), q(-1)), q(-1)}})};
    const std::vector<Cone> flat = limiting_normal_cone(lines, v(q(0), q(0)));
    REQUIRE(flat.size() == 1);
    CHECK(flat[0] == Cone::generated_by(2, {v(q(0), q(1)), v(q(0), q(-1))}));

    // {y >= -|x|} as the union of {y >= -x} and {y >= x}.
    const PolyhedralUnion hyp{halfplanes({{v(q(-1), q(-1)), q(0)}}), halfplanes({{v(q(1), q(-1)), q(0)}})};
    const Vec o = v(q(0), q(0));
    CHECK(frechet_normal_cone(hyp, o).is_zero());
    const std::vector<Cone> lim = limiting_normal_cone(hyp, o);
    CHECK(limiting_contains(lim, v(q(-1), q(-1))));
    CHECK(limiting_contains(lim, v(q(1), q(-1))));
    CHECK(limiting_contains(lim, v(q(-3), q(-3))));
    CHECK_FALSE(limiting_contains(lim, v(q(0), q(-1))));
    CHECK_FALSE(limiting_contains(lim, v(q(1), q(1))));
    CHECK(lim.size() == 3);

    const PolyhedralUnion square{halfplanes({{v(q(-1), q(0)), q(0)}, {v(q(1), q(0)), q(1)},
                                             {v(q(0), q(-1)), q(0)}, {v(q(0), q(1)), q(1)}})};
    const Cone n = frechet_normal_cone(square, o);
    CHECK(n == Cone::generated_by(2, {v(q(-1), q(0)), v(q(0), q(-1))}));
    for (const Cone& c : limiting_normal_cone(square, o)) CHECK(c.subset_of(n));
  }

  TEST_CASE("polarity on random convex corners") {
    Gen g(8101);
    for (int n = 0; n < 40; ++n) {
      std::vector<HalfSpace> rows;
      const long m = g.integer(1, 3);
      for (long i = 0; i < m; ++i) {
        const Vec a = v(g.rational(3, 2), g.rational(3, 2));
        rows.push_back({a, q(0)});
      }
      rows.push_back({v(q(1), q(1)), q(5)});
      const PolyhedralSet p = halfplanes(rows);
      const Vec o = v(q(0), q(0));
      const Cone t = p.tangent_cone(o);
      const Cone nf = frechet_normal_cone({p}, o);
      CAPTURE(n);
      CHECK(nf == t.polar());
      CHECK(t.polar().polar() == t);
      for (long i = -3; i <= 3; ++i) {
        for (long j = -3; j <= 3; ++j) {
          const Vec d = v(q(i, 2), q(j, 3));
          CHECK(nf.contains(d) == oracle_in_normal(p, o, d));
        }
      }
      // Convex case: limiting and Frechet agree.
      const std::vector<Cone> lim = limiting_normal_cone({p}, o);
      bool found = false;
      for (const Cone& c : lim) {
        CHECK(c.subset_of(nf));
        found = found || c == nf;
      }
      CHECK(found);
    }
  }
}

TEST_SUITE("coderivative") {
  TEST_CASE("coderivatives of simple graphs") {
    CHECK(coderivative(lin(q(1)), q(0), q(0), q(2)) == IntervalSet::point(q(2)));
    CHECK(coderivative(lin(q(1)), q(3), q(3), q(-1, 2), ConeKind::limiting) == IntervalSet::point(q(-1, 2)));
    CHECK(coderivative(lin(q(0)), q(0), q(0), q(5)) == IntervalSet::point(q(0)));
    CHECK(coderivative(lin(q(2)), q(0), q(0), q(1)) == IntervalSet::point(q(2)));
    CHECK(coderivative(counter_f(), q(0), q(0), q(1)) == IntervalSet::closed(Real::neg_inf(), q(-1)));
    CHECK(coderivative(counter_f(), q(0), q(0), q(-1)).empty());
    CHECK(coderivative(counter_f(), q(0), q(0), q(1), ConeKind::limiting) == IntervalSet::closed(Real::neg_inf(), q(-1)));
    CHECK(coderivative_at_zero(counter_f(), q(0), q(0)) == IntervalSet::closed(Real::neg_inf(), q(0)));
    CHECK_THROWS_AS(coderivative(lin(q(1)), q(0), q(1), q(1)), PointNotOnGraph);
    // Kink: the Frechet cone is smaller than the limiting one.
    const PMF k = kinked(q(-1, 2), q(1, 2));
    CHECK(coderivative(k, q(0), q(0), q(-1)).empty());
    CHECK(coderivative(k, q(0), q(0), q(1)) == IntervalSet::closed(q(-1, 2), q(1, 2)));
    CHECK(coderivative(k, q(0), q(0), q(-1), ConeKind::limiting) == IntervalSet::normalize({{q(-1, 2), q(-1, 2)}, {q(1, 2), q(1, 2)}}));
    CHECK(cone_kind_from_string("limiting") == ConeKind::limiting);
    CHECK_THROWS_AS(cone_kind_from_string("clarke"), ValidationError);
  }

  TEST_CASE("hypothesis H") {
    const HypothesisReport a = hypothesis_H_check(lin(q(2)), lin(q(-1, 2)), q(0), q(0), q(0));
    CHECK(a.holds);
    CHECK(a.qualification == IntervalSet::point(q(0)));
    CHECK(a.via.size() == 2);
    const HypothesisReport z = hypothesis_H_check(lin(q(0)), lin(q(0)), q(0), q(0), q(0));
    CHECK(z.holds);
    CHECK(z.f_at_zero == IntervalSet::point(q(0)));
    CHECK(z.g_at_zero == IntervalSet::point(q(0)));
    CHECK(z.psnc == "automatic (finite dimension)");
    // G with a vertical piece is not pseudo-Lipschitz; F+G still qualifies.
    const PMF vertical("V", Range::all(),
                       {Piece{"left", Range::make(Real::neg_inf(), q(0), true, true), {Band{std::nullopt, {Affine{q(0), q(0)}}, {Affine{q(0), q(0)}}}}},
                        Piece{"right", Range::make(q(0), Real::inf(), false, true), {Band{std::nullopt, {Affine{q(0), q(0)}}, {}}}}});
    const HypothesisReport v_only = hypothesis_H_check(lin(q(1)), vertical, q(0), q(0), q(0));
    CHECK(v_only.g_at_zero == IntervalSet::closed(Real::neg_inf(), q(0)));
    CHECK(v_only.holds);
    REQUIRE(v_only.via.size() == 1);
    CHECK(v_only.via[0].rfind("(iii)", 0) == 0);
  }

  TEST_CASE("kernel condition") {
    const KernelReport id = kernel_condition_check(lin(q(1)), lin(q(0)), q(0), q(0), q(0));
    CHECK(id.verdict == KernelVerdict::predicts_regular);
    CHECK(id.kernel == IntervalSet::point(q(0)));
    const KernelReport zz = kernel_condition_check(lin(q(0)), lin(q(0)), q(0), q(0), q(0));
    CHECK(zz.verdict == KernelVerdict::predicts_nothing);
    CHECK(zz.kernel == IntervalSet::whole());
    const KernelReport cf = kernel_condition_check(counter_f(), lin(q(0)), q(0), q(0), q(0));
    CHECK(cf.verdict == KernelVerdict::predicts_regular);
    CHECK(to_string(cf.verdict) == "predicts-regular");
    CHECK(mr_modulus(counter_f(), q(0), q(0), NeighborhoodSchedule{}, GridSpec{}).value == q(1));
    CHECK_THROWS_AS(kernel_condition_check(lin(q(1)), lin(q(0)), q(0), q(1), q(0)), PointNotOnGraph);
  }

  TEST_CASE("kernel prediction matches epigraphical regularity") {
    for (const Pair& p : kernel_corpus()) {
      CAPTURE(p.name);
      const KernelReport kr = kernel_condition_check(p.f, p.g, q(0), q(0), q(0));
      const EpigraphicalMF e(p.f, p.g, p.lambda);
      const ModulusReport m = epi_mr_modulus(e, q(0), q(0), q(0), NeighborhoodSchedule{}, GridSpec{});
      const bool finite = m.verdict == ModulusVerdict::regular && m.value.is_finite();
      CHECK((kr.verdict == KernelVerdict::predicts_regular) == finite);
      if (kr.verdict == KernelVerdict::predicts_nothing) CHECK(m.verdict == ModulusVerdict::irregular);
    }
  }

  TEST_CASE("slope bound examples") {
    CHECK(coderivative_slope_bound(lin(q(2)), lin(q(-1, 2)), q(0), q(0), q(1)) == q(3, 2));
    CHECK(coderivative_slope_bound(lin(q(2)), lin(q(-1, 2)), q(0), q(0), q(1), q(1, 10)) == q(13, 10));
    CHECK(coderivative_slope_bound(lin(q(1)), lin(q(0)), q(0), q(0), q(1)) == q(1));
    CHECK(coderivative_slope_bound(lin(q(0)), lin(q(0)), q(0), q(0), q(1)) == q(0));
    CHECK_THROWS_AS(coderivative_slope_bound(lin(q(1)), lin(q(0)), q(0), q(0), q(0)), PreconditionViolated);
    CHECK_THROWS_AS(coderivative_slope_bound(lin(q(1)), lin(q(0)), q(0), q(1), q(3)), PreconditionViolated);
    CHECK_THROWS_AS(coderivative_slope_bound(lin(q(1)), lin(q(0)), q(0), q(0), q(1), q(1)), ValidationError);
  }

  TEST_CASE("slope bound never exceeds the strong slope") {
    const std::vector<std::pair<PMF, PMF>> corpus{
        {lin(q(2)), lin(q(-1, 2))},      {lin(q(1)), lin(q(0))},
        {counter_f(), lin(q(0))},        {ray_up(q(1)), lin(q(0))},
        {kinked(q(1), q(3)), lin(q(1, 2))}, {lin(q(2)), kinked(q(-1, 2), q(1, 2))},
        {lin(q(-1)), kinked(q(1), q(-1, 3))},
    };
    std::size_t checked = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const auto& [f, g] = corpus[i];
      const EpigraphicalMF e(f, g, q(1));
      for (long xi = -2; xi <= 2; ++xi) {
        const Real x = q(xi, 4);
        const Real k = g.image(x).intervals().front().lo;
        for (long yi = -6; yi <= 6; ++yi) {
          const Real y = q(yi, 3);
          if (f.image(x).contains(y - k)) continue;
          const Real bound = coderivative_slope_bound(f, g, x, k, y);
          const Real slope = epi_envelope_slope(e, x, k, y, q(1));
          CAPTURE(i);
          CAPTURE(x);
          CAPTURE(y);
          CHECK(approx_le(bound, slope, 1e-6));
          ++checked;
        }
      }
    }
    CHECK(checked > 200);
  }
}
