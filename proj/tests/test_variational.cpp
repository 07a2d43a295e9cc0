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

#include "doctest.h"
#include "support.hpp"
#include "vwb/errors.hpp"
#include "vwb/variational.hpp"

using namespace vwb;
using namespace vwb::testing;

namespace {

ParamMF affine_param(const Real& ax, const Real& ap, const Real& c) {
  const Affine2 a{ax, ap, c};
  return ParamMF("G", Range::all(), Range::all(), {ParamPiece{"g", Range::all(), Range::all(), {ParamBand{{a}, {a}}}}});
}

ParametricScenario affine_scenario() {
  return {"affine", PMF::affine("F", q(2), q(0)), affine_param(q(-1, 2), q(1), q(0)), q(0), q(0), q(0),
          q(1, 2), q(1, 2), q(1)};
}

ParametricScenario counter_scenario() {
  return {"counter", counter_f(), ParamMF::lift(counter_g(), q(0)), q(0), q(0), q(0), q(1), q(0), q(0)};
}

NeighborhoodSchedule quick() { return short_schedule(5); }

// S(p) = {-2p/3} for the affine scenario.
Real oracle_solution(const Real& p) { return -q(2) * p / q(3); }

}  // namespace

TEST_SUITE("variational") {
  TEST_CASE("scenario bound and certification") {
    const ParametricScenario s = affine_scenario();
    CHECK(s.bound() == q(2, 3));
    const ConstantsCertificate c = certify_constants(s, quick(), GridSpec{});
    CHECK(c.certified);
    CHECK(c.f_modulus.value == q(1, 2));
    CHECK(c.g_x.value == q(1, 2));
    CHECK(c.g_p.value == q(1));
    ParametricScenario loose = s;
    loose.gamma = q(1, 2);
    const ConstantsCertificate bad = certify_constants(loose, quick(), GridSpec{});
    CHECK_FALSE(bad.certified);
    CHECK(bad.detail.find("gamma") != std::string::npos);
    ParametricScenario steep = s;
    steep.tau = q(1);
    steep.lambda = q(1);
    CHECK_THROWS_AS(steep.bound(), PreconditionViolated);
  }

  TEST_CASE("uniform regularity of the parametric epigraphical map") {
    const ParametricEpiReport rep = parametric_epi_mr_check(affine_scenario(), quick(), GridSpec{});
    CHECK(rep.verdict == Verdict::holds);
    CHECK(rep.bound == q(2, 3));
    CHECK(rep.uniform == q(2, 3));
    CHECK(rep.slices.size() >= 3);
    for (const ParamSlice& sl : rep.slices) {
      CHECK(sl.k == sl.p);
      CHECK(sl.y == sl.p);
    }
    ParametricScenario steep = affine_scenario();
    steep.tau = q(1);
    steep.lambda = q(1);
    CHECK_THROWS_AS(parametric_epi_mr_check(steep, quick(), GridSpec{}), PreconditionViolated);
  }

  TEST_CASE("p-free G reduces to the plain epigraphical map") {
    const PMF f = PMF::affine("F", q(2), q(0));
    const PMF g = PMF::affine("G", q(-1, 2), q(0));
    const ParametricScenario s{"free", f, ParamMF::lift(g, q(0)), q(0), q(0), q(0), q(1, 2), q(1, 2), q(0)};
    const ParametricEpiReport rep = parametric_epi_mr_check(s, quick(), GridSpec{});
    const ModulusReport plain = epi_mr_modulus(EpigraphicalMF(f, g, q(1, 2)), q(0), q(0), q(0), quick(), GridSpec{});
    REQUIRE_FALSE(rep.slices.empty());
    for (const ParamSlice& sl : rep.slices) {
      CHECK(sl.modulus.value.identical(plain.value));
      REQUIRE(sl.modulus.trace.size() == plain.trace.size());
      for (std::size_t i = 0; i < plain.trace.size(); ++i) CHECK(sl.modulus.trace[i].value.identical(plain.trace[i].value));
    }
    const SolutionMapReport sm = solution_map_lipschitz(s, quick(), GridSpec{});
    REQUIRE(sm.s_lip);
    CHECK(sm.s_lip->value == q(0));
    CHECK(sm.s_bound == q(0));
    CHECK(sm.s_passed);
  }

  TEST_CASE("solution map constants") {
    const ParametricScenario s = affine_scenario();
    const SolutionMapReport rep = solution_map_lipschitz(s, quick(), GridSpec{});
    CHECK(rep.se_bound == q(7, 3));
    CHECK(rep.s_bound == q(2, 3));
    CHECK(rep.se_lip.value == q(5, 3));
    CHECK(rep.se_passed);
    REQUIRE(rep.s_lip);
    CHECK(rep.s_lip->value == q(2, 3));
    CHECK(rep.s_passed);
    CHECK(rep.verdict == Verdict::holds);
    CHECK(rep.stability.shortcut_used);
    // Witnesses reproduce against the closed form.
    for (const ModulusWitness& w : rep.s_lip->witnesses) {
      const Real x = w.point[0];
      CHECK(x == oracle_solution(w.point[1]));
      CHECK(abs(x - oracle_solution(w.point[2])) / abs(w.point[1] - w.point[2]) == w.ratio);
    }
  }

  TEST_CASE("Robinson transfer") {
    const RobinsonTransferReport rep = robinson_transfer_check(affine_scenario(), q(1), quick(), GridSpec{});
    CHECK(rep.m == q(3, 2));
    CHECK(rep.localized_holds);
    CHECK(rep.localized_points > 0);
    CHECK(rep.robinson.value == q(2, 3));
    CHECK(rep.transfer_passed);
    CHECK(rep.verdict == Verdict::holds);

    const ParametricScenario id{"id", PMF::affine("F", q(1), q(0)), affine_param(q(0), q(0), q(0)), q(0), q(0), q(0),
                                q(1), q(0), q(0)};
    const RobinsonTransferReport ri = robinson_transfer_check(id, q(1), quick(), GridSpec{});
    CHECK(ri.robinson.value == q(1));
    CHECK(ri.transfer_passed);

    try {
      robinson_transfer_check(counter_scenario(), q(1, 4), quick(), GridSpec{});
      FAIL("transfer was not refused");
    } catch (const PreconditionViolated& e) {
      CHECK(std::string(e.what()) == "sum-stability absent");
    }
  }

  TEST_CASE("solution map without sum-stability skips the S bound") {
    const SolutionMapReport rep = solution_map_lipschitz(counter_scenario(), short_schedule(3), GridSpec{});
    CHECK_FALSE(rep.s_lip);
    CHECK(rep.s_skip_reason == "sum-stability absent");
    CHECK(rep.stability.verdict == StabilityVerdict::unstable);
  }

  TEST_CASE("slope premise and conclusion") {
    const ParavasysReport a = paravasys_check(affine_scenario(), q(3, 2), q(1), quick(), GridSpec{});
    CHECK(a.points_checked > 0);
    CHECK(a.premise == Verdict::holds);
    CHECK(a.conclusion_checked);
    CHECK(a.conclusion == Verdict::holds);

    const ParametricScenario flat{"flat", PMF::affine("F", q(0), q(0)), affine_param(q(0), q(1), q(0)), q(0), q(0), q(0),
                                  q(1), q(0), q(1)};
    const ParavasysReport f = paravasys_check(flat, q(1, 10), q(1), quick(), GridSpec{});
    CHECK(f.premise == Verdict::violated);
    REQUIRE(f.premise_witness);
    CHECK(f.premise_witness->slope == q(0));
    CHECK_FALSE(f.conclusion_checked);
    CHECK(f.conclusion == Verdict::inconclusive);

    const ParavasysReport c = paravasys_check(counter_scenario(), q(1, 2), q(2), quick(), GridSpec{});
    CHECK(c.premise == Verdict::violated);
    REQUIRE(c.premise_witness);
    CHECK(c.premise_witness->x.sign() < 0);
    CHECK(c.premise_witness->slope == q(0));
  }
}

TEST_SUITE("variational properties") {
  TEST_CASE("measured transfer constants stay below their bounds") {
    Gen gen(9101);
    int ran = 0;
    for (int n = 0; n < 8; ++n) {
      const Real a = q(gen.integer(1, 3)) * (gen.coin() ? q(1) : q(-1));
      const Real c = q(gen.integer(-2, 2), 4);
      const Real gp = q(gen.integer(0, 2), 2);
      const Real tau = q(1) / abs(a);
      const Real lambda = abs(c);
      if (!(tau * lambda < q(1)) || (a + c).sign() == 0) continue;
      const ParametricScenario s{"rand", PMF::affine("F", a, q(0)), affine_param(c, gp, q(0)), q(0), q(0), q(0),
                                 tau, lambda, gp};
      CAPTURE(n);
      const ParametricEpiReport e = parametric_epi_mr_check(s, short_schedule(4), GridSpec{});
      CHECK(e.verdict == Verdict::holds);
      const RobinsonTransferReport r = robinson_transfer_check(s, q(1), short_schedule(4), GridSpec{});
      CHECK(approx_le(r.robinson.value, r.bound, 1e-6));
      ++ran;
    }
    CHECK(ran >= 4);
  }
}
