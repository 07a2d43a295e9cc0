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

#ifndef VWB_VARIATIONAL_HPP_
#define VWB_VARIATIONAL_HPP_

#include <optional>
#include <string>
#include <vector>

#include "vwb/epigraph.hpp"
#include "vwb/parametric.hpp"
#include "vwb/regularity.hpp"

namespace vwb {

/// Generalized equation 0 in F(x) + G(x, p) around (xbar, pbar) with
/// kbar in G(xbar, pbar) and -kbar in F(xbar).
struct ParametricScenario {
  std::string name;
  PiecewiseMultifunction f;
  ParametricMultifunction g;
  Real xbar, pbar, kbar;
  Real tau;     // regularity modulus of F
  Real lambda;  // Lipschitz constant of G in x, uniform in p
  Real gamma;   // Lipschitz constant of G in p, uniform in x

  // (1/tau - lambda)^{-1}; throws PreconditionViolated unless tau * lambda < 1.
  Real bound() const;
  void validate() const;
};

struct ConstantsCertificate {
  ModulusReport f_modulus;
  ModulusReport g_x;
  ModulusReport g_p;
  bool certified = false;
  std::string detail;
};

// Measures the three constants and compares them with the declared ones.
ConstantsCertificate certify_constants(const ParametricScenario& s, const NeighborhoodSchedule& sched,
                                       const GridSpec& grid, double tol = 1e-6);

struct ParamSlice {
  Real p;
  Real k, y;  // slice center: nearest graph point to (kbar, 0)
  ModulusReport modulus;
};

struct ParametricEpiReport {
  Verdict verdict = Verdict::inconclusive;
  Real bound;
  Real uniform;  // max over the p-grid
  std::vector<ParamSlice> slices;
  ConstantsCertificate certificate;
};

ParametricEpiReport parametric_epi_mr_check(const ParametricScenario& s, const NeighborhoodSchedule& sched,
                                            const GridSpec& grid, double tol = 1e-6);

struct SolutionMapReport {
  Verdict verdict = Verdict::inconclusive;
  Real se_bound;         // gamma + (gamma + 1)(1/tau - lambda)^{-1}
  ModulusReport se_lip;  // S_E in (y, p), max metric on both sides
  bool se_passed = false;
  Real s_bound;          // gamma (1/tau - lambda)^{-1}
  std::optional<ModulusReport> s_lip;  // S in p, when sum-stability holds
  bool s_passed = false;
  std::string s_skip_reason;
  SumStabilityReport stability;
  ConstantsCertificate certificate;
};

SolutionMapReport solution_map_lipschitz(const ParametricScenario& s, const NeighborhoodSchedule& sched,
                                         const GridSpec& grid, double tol = 1e-6);

struct LocalizedParamWitness {
  Real x, p, lhs, rhs;
};

struct RobinsonTransferReport {
  Verdict verdict = Verdict::inconclusive;
  Real m;      // 1/tau - lambda
  Real theta;
  bool localized_holds = false;  // m d(x, S(p)) <= d(0, F(x) + G(x, p) n B[kbar, theta])
  std::optional<LocalizedParamWitness> localized_witness;
  std::size_t localized_points = 0;
  SumStabilityReport stability;
  ModulusReport robinson;
  Real bound;  // 1/m
  bool transfer_passed = false;
  ConstantsCertificate certificate;
};

// Throws PreconditionViolated("sum-stability absent") when the pair is not
// sum-stable at (xbar, pbar) and the shortcut does not apply.
RobinsonTransferReport robinson_transfer_check(const ParametricScenario& s, const Real& theta,
                                               const NeighborhoodSchedule& sched, const GridSpec& grid,
                                               double tol = 1e-6);

struct ParavasysWitness {
  Real x, p, k, y;
  Real phi, slope, distance;
};

struct ParavasysReport {
  Verdict premise = Verdict::inconclusive;
  std::optional<ParavasysWitness> premise_witness;  // slope < m with 0 < phi < gamma
  Verdict conclusion = Verdict::inconclusive;       // unchecked when the premise fails
  std::optional<ParavasysWitness> conclusion_witness;
  std::size_t points_checked = 0;
  bool conclusion_checked = false;
};

// Slope premise |grad phi_{p,E}|(x, k) >= m wherever 0 < phi < gamma, then
// m d((x, k), S_E(y, p)) <= phi_{p,E}((x, k), y); unit-scaled metric.
ParavasysReport paravasys_check(const ParametricScenario& s, const Real& m, const Real& gamma,
                                const NeighborhoodSchedule& sched, const GridSpec& grid);

}  // namespace vwb

#endif  // VWB_VARIATIONAL_HPP_
