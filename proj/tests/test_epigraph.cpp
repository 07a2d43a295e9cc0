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

#include <string>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "vwb/epigraph.hpp"
#include "vwb/errors.hpp"

using namespace vwb;
using namespace vwb::testing;

namespace {

Band constant_band(const Real& lo, const Real& hi) { return Band{std::nullopt, {Affine{q(0), lo}}, {Affine{q(0), hi}}}; }

PMF step_f() {
  return PMF("RF", Range::closed(q(0), q(1)),
             {Piece{"zero", Range::point(q(0)), {constant_band(q(0), q(0))}},
              Piece{"rest", Range::make(q(0), q(1), true, false), {constant_band(q(1), q(1))}}});
}

PMF step_g() {
  return PMF("RG", Range::closed(q(0), q(1)),
             {Piece{"zero", Range::point(q(0)), {constant_band(q(0), q(0)), constant_band(q(1), q(1))}},
              Piece{"rest", Range::make(q(0), q(1), true, false), {constant_band(q(0), q(0))}}});
}

PMF lin(const Real& a, const Real& b = Real(0)) { return PMF::affine("L", a, b); }

PMF band_map(const Real& a, const Real& b, const Real& w) {
  return PMF("B", Range::all(),
             {Piece{"all", Range::all(), {Band{std::nullopt, {Affine{a, b}}, {Affine{a, b + w}}}}}});
}

PMF ray_map(const Real& a, const Real& b) {
  return PMF("Ray", Range::all(), {Piece{"all", Range::all(), {Band{std::nullopt, {Affine{a, b}}, {}}}}});
}

// Graph of {x} on (0, 1] with the endpoint at 0 removed from the image.
PMF opened_identity() {
  return PMF("open", Range::closed(q(0), q(1)),
             {Piece{"hole", Range::point(q(0)), {}},
              Piece{"rest", Range::make(q(0), q(1), true, false), {Band{std::nullopt, {Affine{q(1), q(0)}}, {Affine{q(1), q(0)}}}}}});
}

NeighborhoodSchedule tenth() {
  NeighborhoodSchedule s;
  s.r0 = q(1, 10);
  return s;
}

// d((x, k), S) by brute force over a fine grid of S for F = {a u}, G = {c u}.
Real oracle_affine_solution_distance(const Real& a, const Real& c, const Real& lambda, const Real& x, const Real& k,
                                     const Real& y) {
  // S_E(y) = {(u, c u) : (a + c) u = y}.
  const Real u = y / (a + c);
  return ProductMetric{lambda}(x, k, u, c * u);
}

// Counterexample pair with random parameters rescaled: F(x) = [-s x, inf) for
// x >= 0 and {-1} otherwise, G = {0, 1}.
PMF scaled_counter_f(const Real& s) {
  Piece right{"right", Range::make(q(0), Real::inf(), false, true), {Band{std::nullopt, {Affine{-s, q(0)}}, {}}}};
  Piece left{"left", Range::make(Real::neg_inf(), q(0), true, true), {constant_band(q(-1), q(-1))}};
  return PMF("F", Range::all(), {right, left});
}

}  // namespace

TEST_SUITE("epigraph") {
  TEST_CASE("product metric") {
    const ProductMetric m{q(1, 2)};
    CHECK(m(q(0), q(0), q(1, 4), q(1)) == q(2));
    CHECK(m(q(0), q(0), q(3), q(1)) == q(3));
    const ProductMetric flat{q(0)};
    CHECK(flat(q(0), q(1), q(2), q(1)) == q(2));
    CHECK(flat(q(0), q(1), q(0), q(2)).is_pos_inf());
  }

  TEST_CASE("epigraphical values") {
    const EpigraphicalMF e(lin(q(2)), PMF::constant("G", iv(q(0), q(1))), q(1));
    CHECK(e.value(q(1), q(1, 2)) == IntervalSet::point(R("2.5")));
    CHECK(e.value(q(1), q(2)).empty());
    const EpigraphicalMF c(counter_f(), counter_g(), q(0));
    CHECK(c.value(q(1, 2), q(1)) == IntervalSet::closed(q(1, 2), Real::inf()));
    CHECK(c.value(q(1, 2), q(1, 3)).empty());
    CHECK_THROWS_AS(EpigraphicalMF(lin(q(1)), lin(q(1)), q(-1)), ValidationError);
  }

  TEST_CASE("build rejects graphs that are not closed") {
    const Region unit{q(-1), q(2), q(-1), q(2)};
    CHECK_NOTHROW(build_epigraphical(lin(q(2)), PMF::constant("G", iv(q(0), q(1))), q(1), unit));
    CHECK_THROWS_AS(build_epigraphical(step_f(), step_g(), q(1), unit), NotClosed);
    CHECK_THROWS_AS(build_epigraphical(counter_f(), counter_g(), q(0), Region{q(-2), q(2), q(-2), q(2)}), NotClosed);
    // Near the origin the counterexample is closed.
    const Region local{q(-1, 2), q(1, 2), q(-1, 2), q(3, 2)};
    CHECK_NOTHROW(build_epigraphical(counter_f(), counter_g(), q(0), local));
  }

  TEST_CASE("solution distance of the affine pair") {
    const EpigraphicalMF e(lin(q(2)), lin(q(-1, 2)), q(1, 2));
    CHECK(e.solution_distance(q(0), q(0), q(1)) == q(2, 3));
    CHECK(oracle_affine_solution_distance(q(2), q(-1, 2), q(1, 2), q(0), q(0), q(1)) == q(2, 3));
    CHECK(epi_solution_distance(e, q(2, 3), q(-1, 3), q(1)) == q(0));
    // S_E(y) empty.
    const EpigraphicalMF none(PMF::constant("F", IntervalSet::point(q(0))), PMF::constant("G", IntervalSet::point(q(0))), q(1));
    CHECK(none.solution_distance(q(0), q(0), q(1)).is_pos_inf());
  }

  TEST_CASE("solution distance with lambda zero") {
    // k must stay fixed: the branch G = 1 of the counterexample.
    const EpigraphicalMF e(counter_f(), counter_g(), q(0));
    // S_E(1/2) on the branch k = 1 is {u >= 1/2}; on k = 0 it is {u >= 0}.
    CHECK(e.solution_distance(q(-1), q(1), q(1, 2)) == q(3, 2));
    CHECK(e.solution_distance(q(-1), q(0), q(1, 2)) == q(1));
    CHECK(e.solution_distance(q(-1), q(1, 2), q(1, 2)).is_pos_inf());
  }

  TEST_CASE("solution distance matches the affine oracle") {
    Gen g(7101);
    for (int n = 0; n < 60; ++n) {
      const Real a = g.nonzero(4, 2);
      const Real c = g.rational(2, 3);
      if ((a + c).sign() == 0) continue;
      const Real lambda = q(g.integer(1, 4), g.integer(1, 3));
      const Real x = g.rational(3, 2);
      const Real k = g.rational(3, 2);
      const Real y = g.rational(3, 2);
      const EpigraphicalMF e(lin(a), lin(c), lambda);
      CHECK(e.solution_distance(x, k, y) == oracle_affine_solution_distance(a, c, lambda, x, k, y));
    }
  }

  TEST_CASE("envelope of the step pair disagrees with the reduced formula") {
    const EpigraphicalMF e(step_f(), step_g(), q(1));
    const EpiEnvelopeReport rep = epi_envelope(e, q(0), q(1), q(3), NeighborhoodSchedule{}, GridSpec{});
    CHECK(rep.full.value == q(2));
    REQUIRE(rep.reduced);
    CHECK(*rep.reduced == q(1));
    CHECK_FALSE(rep.g_lsc);
    CHECK_FALSE(rep.agree);
    CHECK(rep.discrepancy_flagged);
    for (const TracePoint& t : rep.full.trace) CHECK(t.value == q(2));
    CHECK(epi_envelope_exact(e, q(0), q(1, 2), q(3)).is_pos_inf());
  }

  TEST_CASE("envelope trace") {
    const EpigraphicalMF e(counter_f(), counter_g(), q(0));
    const EpiEnvelopeReport rep = epi_envelope(e, q(0), q(0), q(-1, 2), NeighborhoodSchedule{}, GridSpec{});
    // F(0) + 0 = [0, inf) and F(u) = {-1} to the left: the liminf is 1/2.
    CHECK(rep.full.value == q(1, 2));
    CHECK(rep.g_lsc);
    CHECK(rep.agree);
    for (std::size_t i = 1; i < rep.full.trace.size(); ++i) {
      CHECK(rep.full.trace[i - 1].value <= rep.full.trace[i].value);
    }
    CHECK(rep.full.trace.back().radius == q(0));
    CHECK(epi_envelope(e, q(0), q(1, 2), q(0), NeighborhoodSchedule{}, GridSpec{}).full.value.is_pos_inf());
  }

  TEST_CASE("envelope slope") {
    const EpigraphicalMF e(lin(q(2)), lin(q(-1, 2)), q(1));
    // Along gph G the map u |-> 1 - 3u/2 falls at rate 3/2 per unit step.
    CHECK(epi_envelope_slope(e, q(0), q(0), q(1), q(1)) == q(3, 2));
    CHECK(epi_envelope_slope(e, q(2, 3), q(-1, 3), q(1), q(1)) == q(0));
    CHECK(epi_envelope_slope(e, q(0), q(1), q(1), q(1)).is_pos_inf());
    // Brute difference quotient along the graph direction.
    const Real t = q(1, 1000);
    const Real drop = epi_envelope_exact(e, q(0), q(0), q(1)) - epi_envelope_exact(e, t, -t / q(2), q(1));
    CHECK(drop / t == q(3, 2));
  }

  TEST_CASE("zero set") {
    const Box3 box{q(-1), q(1), q(-1), q(2), q(-2), q(3)};
    const EpigraphicalMF e(lin(q(2)), PMF::constant("G", iv(q(0), q(1))), q(1));
    const ZeroSetReport ok = epi_zero_set_check(e, box, GridSpec{});
    CHECK(ok.verdict == Verdict::holds);
    CHECK(ok.points_checked > 100);
    const EpigraphicalMF s(PMF::constant("F", IntervalSet::point(q(1))), PMF::constant("G", IntervalSet::point(q(0))), q(1));
    CHECK(epi_zero_set_check(s, box, GridSpec{}).verdict == Verdict::holds);

    const EpigraphicalMF opened(opened_identity(), PMF::constant("G", IntervalSet::point(q(0))), q(1));
    const ZeroSetReport bad = epi_zero_set_check(opened, Box3{q(0), q(1), q(-1), q(1), q(-1), q(1)}, GridSpec{});
    CHECK(bad.verdict == Verdict::violated);
    REQUIRE(bad.mismatch);
    CHECK(bad.mismatch->x == q(0));
    CHECK(bad.mismatch->k == q(0));
    CHECK(bad.mismatch->y == q(0));
    CHECK(bad.mismatch->phi == q(0));
    CHECK_FALSE(bad.mismatch->in_solution_set);
  }

  TEST_CASE("decomposition and stability shortcut") {
    const PMF f = counter_f();
    const PMF g = counter_g();
    CHECK(decomposes(f, g, q(1, 20), q(0), q(0), q(0), q(1, 40)));
    CHECK_FALSE(decomposes(f, g, q(1, 20), q(1, 20), q(0), q(0), q(1, 40)));
    CHECK_FALSE(usc_singleton_at(g, q(0), q(0)));
    CHECK(usc_singleton_at(lin(q(-1, 2)), q(0), q(0)));
    CHECK_FALSE(usc_singleton_at(step_g(), q(0), q(0)));

    const SumStabilityReport zero = sum_stability_probe(f, PMF::constant("G", IntervalSet::point(q(0))), q(0), q(0), q(0),
                                                        {q(1, 4)}, NeighborhoodSchedule{}, GridSpec{});
    CHECK(zero.verdict == StabilityVerdict::stable);
    CHECK(zero.shortcut_used);
    const SumStabilityReport aff = sum_stability_probe(lin(q(2)), lin(q(-1, 2)), q(0), q(0), q(0), {q(1, 4)},
                                                       NeighborhoodSchedule{}, GridSpec{});
    CHECK(aff.verdict == StabilityVerdict::stable);
    CHECK(aff.shortcut_used);
    CHECK(to_string(StabilityVerdict::unstable) == "unstable");
  }

  TEST_CASE("counterexample is not sum-stable") {
    const PMF f = counter_f();
    const PMF g = counter_g();
    const SumStabilityReport rep = sum_stability_probe(f, g, q(0), q(0), q(0), {q(1, 4), q(1, 8), q(1, 16)},
                                                       NeighborhoodSchedule{}, GridSpec{});
    CHECK(rep.verdict == StabilityVerdict::unstable);
    CHECK_FALSE(rep.shortcut_used);
    REQUIRE(rep.witness);
    const StabilityWitness& w = *rep.witness;
    CHECK(w.epsilon == q(1, 4));
    CHECK(w.delta == q(1));
    CHECK(w.x == w.delta / q(2));
    CHECK(w.w == w.delta / q(2));
    REQUIRE(rep.rows.size() == 3);
    for (const StabilityRow& row : rep.rows) {
      CHECK_FALSE(row.delta);
      for (const StabilityWitness& s : row.failures) {
        // Exact recheck of every failure.
        const PMF sum = sum_mf(f, g);
        CHECK(abs(s.x) < s.delta);
        CHECK(abs(s.w) < s.delta);
        CHECK(sum.image(s.x).contains(s.w));
        CHECK_FALSE(decomposes(f, g, s.x, s.w, q(0), q(0), s.epsilon));
        if (s.delta >= q(2) * s.epsilon) {
          CHECK(s.x == s.delta / q(2));
          CHECK(s.w == s.delta / q(2));
        } else {
          CHECK(s.x.sign() < 0);
          CHECK(s.w == q(0));
        }
      }
    }
  }

  TEST_CASE("stability in float mode is inconclusive when every delta passes") {
    const PMF f = lin(q(1)).to_float();
    const PMF g = band_map(q(0), q(0), q(1)).to_float();
    const SumStabilityReport rep = sum_stability_probe(f, g, Real::from_double(0), Real::from_double(0),
                                                       Real::from_double(0), {Real::from_double(0.25)},
                                                       NeighborhoodSchedule{}.to_float(), GridSpec{});
    CHECK(rep.verdict == StabilityVerdict::inconclusive);
    CHECK(rep.backend == Backend::floating);
  }

  TEST_CASE("default theta") {
    CHECK(default_theta(counter_g(), q(0), q(0)) == q(1, 2));
    CHECK(default_theta(counter_g(), q(0), q(1)) == q(1, 2));
    CHECK(default_theta(lin(q(1)), q(0), q(0)).is_pos_inf());
  }

  TEST_CASE("localized estimate") {
    const PMF f = counter_f();
    const PMF g = counter_g();
    const NeighborhoodSchedule sched;
    const LocalizedEstimateReport narrow = localized_sum_estimate_check(f, g, q(0), q(0), q(0), q(1), q(1, 4), sched, GridSpec{});
    CHECK(narrow.verdict == Verdict::holds);
    CHECK_FALSE(narrow.witness);

    const LocalizedEstimateReport wide = localized_sum_estimate_check(f, g, q(0), q(0), q(0), q(10), q(2), sched, GridSpec{});
    CHECK(wide.verdict == Verdict::violated);
    REQUIRE(wide.witness);
    const Real r = sched.radii().back();
    CHECK(wide.witness->x == -r / q(2));
    CHECK(wide.witness->y == -r * r / q(2));
    CHECK(wide.witness->lhs == r / q(2) + r * r / q(2));
    CHECK(wide.witness->rhs == q(10) * r * r / q(2));

    const LocalizedEstimateReport aff = localized_sum_estimate_check(lin(q(2)), lin(q(-1, 2)), q(0), q(0), q(0),
                                                                     q(2, 3) + q(1, 100), q(1), sched, GridSpec{});
    CHECK(aff.verdict == Verdict::holds);
    CHECK_THROWS_AS(localized_sum_estimate_check(f, g, q(0), q(1, 2), q(0), q(1), q(1), sched, GridSpec{}),
                    PointNotOnGraph);
  }

  TEST_CASE("covering") {
    const CoveringReport ok = covering_check(lin(q(2)), lin(q(-1, 2)), q(0), q(0), q(0), q(3, 2), NeighborhoodSchedule{}, GridSpec{});
    CHECK(ok.passed);
    CHECK(ok.min_rate == q(3, 2));
    const CoveringReport bad = covering_check(lin(q(2)), lin(q(-1, 2)), q(0), q(0), q(0), q(2), NeighborhoodSchedule{}, GridSpec{});
    CHECK_FALSE(bad.passed);
    REQUIRE(bad.witness);
    CHECK(bad.witness->rate == q(3, 2));
  }

  TEST_CASE("sum theorem on the tight affine pair") {
    const SumTheoremReport rep = sum_theorem_verify(lin(q(2)), lin(q(-1, 2)), q(0), q(0), q(0), q(1, 2), q(1, 2),
                                                    NeighborhoodSchedule{}, GridSpec{});
    CHECK(rep.bound == q(2, 3));
    CHECK(rep.a_passed);
    CHECK(rep.e_modulus.value <= q(2, 3));
    CHECK(rep.b_ran);
    CHECK(rep.b_passed);
    REQUIRE(rep.sum_modulus);
    CHECK(rep.sum_modulus->value == q(2, 3));
    CHECK(rep.c.passed);
    CHECK(rep.stability.shortcut_used);
  }

  TEST_CASE("sum theorem with slack") {
    const SumTheoremReport rep = sum_theorem_verify(lin(q(2)), lin(q(1, 2)), q(0), q(0), q(0), q(1, 2), q(1, 2),
                                                    NeighborhoodSchedule{}, GridSpec{});
    CHECK(rep.a_passed);
    CHECK(rep.b_passed);
    CHECK(rep.sum_standalone.value == q(2, 5));
    CHECK(rep.c.passed);
  }

  TEST_CASE("sum theorem on the counterexample") {
    const SumTheoremReport rep = sum_theorem_verify(counter_f(), counter_g(), q(0), q(0), q(0), q(1), q(0), tenth(), GridSpec{});
    CHECK(rep.bound == q(1));
    CHECK(rep.a_passed);
    CHECK_FALSE(rep.b_ran);
    CHECK(rep.b_skip_reason == "sum-stability absent");
    CHECK_FALSE(rep.sum_modulus);
    CHECK(rep.sum_standalone.verdict == ModulusVerdict::irregular);
    CHECK(rep.stability.verdict == StabilityVerdict::unstable);
  }

  TEST_CASE("sum theorem preconditions") {
    const NeighborhoodSchedule s;
    CHECK_THROWS_AS(sum_theorem_verify(lin(q(2)), lin(q(2)), q(0), q(0), q(0), q(1, 2), q(2), s, GridSpec{}),
                    PreconditionViolated);
    CHECK_THROWS_AS(sum_theorem_verify(lin(q(1)), lin(q(0)), q(0), q(0), q(0), q(1, 2), q(0), s, GridSpec{}),
                    PreconditionViolated);
    CHECK_THROWS_AS(sum_theorem_verify(lin(q(2)), lin(q(1)), q(0), q(0), q(0), q(1, 2), q(1, 2), s, GridSpec{}),
                    PreconditionViolated);
  }

  TEST_CASE("counterexample bundle") {
    const CounterexampleBundle b = paper_counterexample(q(1, 10));
    CHECK(b.x == q(-1, 20));
    CHECK(b.y == q(-1, 200));
    CHECK(b.dist_preimage == R("0.055"));
    CHECK(b.dist_image == R("0.005"));
    CHECK(b.ratio == q(11));
    CHECK(b.ratio_formula.rfind("(1+delta)/delta", 0) == 0);
    CHECK(b.instability.epsilon == q(1, 40));
    CHECK(b.instability.w == q(1, 20));
    CHECK(b.instability_verified);
    const CounterexampleBundle c = paper_counterexample(q(1, 100));
    CHECK(c.dist_preimage == R("0.00505"));
    CHECK(c.dist_image == R("0.00005"));
    CHECK(c.ratio == q(101));
    for (long d : {10L, 100L, 1000L}) {
      const Real delta = q(1, d);
      const CounterexampleBundle e = paper_counterexample(delta);
      CHECK(e.dist_preimage.identical(delta / q(2) + delta * delta / q(2)));
      CHECK(e.dist_image.identical(delta * delta / q(2)));
      CHECK(e.ratio == (q(1) + delta) / delta);
    }
    CHECK_THROWS_AS(paper_counterexample(q(1)), PreconditionViolated);
    CHECK_THROWS_AS(paper_counterexample(q(0)), PreconditionViolated);
  }
}

TEST_SUITE("epigraph properties") {
  TEST_CASE("zero set equals the solution set on closed maps") {
    Gen g(7202);
    const Box3 box{q(-1), q(1), q(-2), q(2), q(-2), q(2)};
    for (int n = 0; n < 16; ++n) {
      const PMF f = g.coin() ? lin(g.rational(3, 2), g.rational(2, 2)) : ray_map(g.rational(3, 2), g.rational(2, 2));
      const PMF gm = g.coin() ? lin(g.rational(2, 2), g.rational(1, 2))
                              : band_map(g.rational(2, 2), g.rational(1, 2), q(g.integer(0, 2), 2));
      const EpigraphicalMF e(f, gm, q(1));
      CAPTURE(n);
      CHECK(epi_zero_set_check(e, box, GridSpec{}).verdict == Verdict::holds);
    }
    // The counterexample graph is closed only away from (0, -1).
    const EpigraphicalMF c(counter_f(), counter_g(), q(0));
    CHECK(epi_zero_set_check(c, Box3{q(-1, 2), q(1, 2), q(-1, 2), q(1, 2), q(-1, 2), q(1, 2)}, GridSpec{}).verdict ==
          Verdict::holds);
  }

  TEST_CASE("full and reduced envelopes agree where G is lsc") {
    Gen g(7303);
    for (int n = 0; n < 40; ++n) {
      const PMF f = g.coin() ? ray_map(g.rational(3, 2), g.rational(2, 2)) : scaled_counter_f(q(g.integer(1, 3)));
      const PMF gm = band_map(g.rational(2, 2), g.rational(1, 2), q(g.integer(0, 2), 2));
      const EpigraphicalMF e(f, gm, q(1));
      const Real x = g.rational(2, 4);
      const IntervalSet gx = gm.image(x);
      const Real k = midpoint(gx.intervals()[0].lo, gx.intervals()[0].hi);
      const Real y = g.rational(3, 2);
      const EpiEnvelopeReport rep = epi_envelope(e, x, k, y, short_schedule(), GridSpec{});
      CAPTURE(n);
      CHECK(rep.g_lsc);
      CHECK(rep.agree);
      CHECK_FALSE(rep.discrepancy_flagged);
    }
  }

  TEST_CASE("epigraphical regularity respects the sum bound") {
    Gen g(7404);
    int tight = 0;
    for (int n = 0; n < 12; ++n) {
      const Real a = q(g.integer(1, 4)) * (g.coin() ? q(1) : q(-1));
      const Real c = q(g.integer(-3, 3), 4);
      const Real tau = q(1) / abs(a);
      const Real lambda = abs(c);
      if (!(tau * lambda < q(1))) continue;
      const EpigraphicalMF e(lin(a), lin(c), lambda);
      const ModulusReport rep = epi_mr_modulus(e, q(0), q(0), q(0), short_schedule(), GridSpec{});
      const Real bound = q(1) / (q(1) / tau - lambda);
      CAPTURE(n);
      CHECK(rep.verdict == ModulusVerdict::regular);
      CHECK(approx_le(rep.value, bound, 1e-6));
      if (rep.value == bound) ++tight;
    }
    const EpigraphicalMF e(lin(q(2)), lin(q(-1, 2)), q(1, 2));
    CHECK(epi_mr_modulus(e, q(0), q(0), q(0), short_schedule(), GridSpec{}).value == q(2, 3));
    CHECK(tight > 0);
  }

  TEST_CASE("epigraph error bound implies the localized estimate and openness") {
    Gen g(7505);
    for (int n = 0; n < 10; ++n) {
      const Real a = q(g.integer(1, 4)) * (g.coin() ? q(1) : q(-1));
      const Real c = q(g.integer(-3, 3), 4);
      if ((a + c).sign() == 0) continue;
      const EpigraphicalMF e(lin(a), lin(c), q(1, 2));
      const ModulusReport bound = epi_mr_modulus(e, q(0), q(0), q(0), short_schedule(), GridSpec{}, true);
      REQUIRE(bound.verdict == ModulusVerdict::regular);
      const Real tau = bound.value;
      CAPTURE(n);
      CHECK(localized_sum_estimate_check(lin(a), lin(c), q(0), q(0), q(0), tau, Real::inf(), short_schedule(), GridSpec{})
                .verdict == Verdict::holds);
      CHECK(covering_check(lin(a), lin(c), q(0), q(0), q(0), q(1) / tau, short_schedule(), GridSpec{}).passed);
    }
  }
}
