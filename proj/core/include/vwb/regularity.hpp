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

#ifndef VWB_REGULARITY_HPP_
#define VWB_REGULARITY_HPP_

#include <string>
#include <vector>

#include "vwb/multifunction.hpp"
#include "vwb/parametric.hpp"
#include "vwb/sampling.hpp"

namespace vwb {

enum class ModulusKind { metric_regularity, aubin, openness_rate, robinson, lipschitz_x, lipschitz_p };
std::string to_string(ModulusKind k);

// A sample attaining the reported sup (or inf, for openness rates).
// Coordinates by kind:
//   metric-regularity (x, y); aubin (y, y', x); openness-rate (x, y, rho);
//   robinson (x, p); lipschitz-x (x1, x2, p); lipschitz-p (p1, p2, x).
struct ModulusWitness {
  std::vector<Real> point;
  Real ratio;
};

struct ModulusReport {
  ModulusKind kind = ModulusKind::metric_regularity;
  Real value;
  std::vector<ModulusWitness> witnesses;
  Trace trace;
  ModulusVerdict verdict = ModulusVerdict::inconclusive;
  Backend backend = Backend::rational;
  std::size_t samples = 0;
};

// Single-sample ratios, as used by the estimators. nullopt marks a skipped
// sample (vacuous or undefined ratio).
std::optional<Real> mr_ratio(const PiecewiseMultifunction& f, const Real& x, const Real& y);
std::optional<Real> aubin_ratio(const PiecewiseMultifunction& s, const Real& y, const Real& y_prime,
                                const Real& x);
Real openness_ratio(const PiecewiseMultifunction& f, const Real& x, const Real& y, const Real& rho);
std::optional<Real> robinson_ratio(const PiecewiseMultifunction& f, const ParametricMultifunction& g,
                                   const Real& x, const Real& p);

ModulusReport mr_modulus(const PiecewiseMultifunction& f, const Real& xbar, const Real& ybar,
                         const NeighborhoodSchedule& sched, const GridSpec& grid);
ModulusReport aubin_modulus(const PiecewiseMultifunction& s, const Real& ybar, const Real& xbar,
                            const NeighborhoodSchedule& sched, const GridSpec& grid);
// value is the rate; the verdict is read off the reciprocal trace.
ModulusReport openness_rate(const PiecewiseMultifunction& f, const Real& xbar, const Real& ybar,
                            const NeighborhoodSchedule& sched, const GridSpec& grid);

struct EquivalenceReport {
  Verdict verdict = Verdict::inconclusive;
  ModulusReport mr;
  ModulusReport aubin;
  ModulusReport openness;
  std::string detail;
};

EquivalenceReport equivalence_check(const PiecewiseMultifunction& f, const Real& xbar, const Real& ybar,
                                    double tol, const NeighborhoodSchedule& sched, const GridSpec& grid);

enum class UniformWrt { x_uniform_in_p, p_uniform_in_x };
std::string to_string(UniformWrt w);
UniformWrt uniform_wrt_from_string(const std::string& s);

// sup over k in A of d(k, T), for bounded A; -inf when A is empty.
Real sup_distance(const IntervalSet& a, const IntervalSet& t);

ModulusReport pl_uniform_modulus(const ParametricMultifunction& g, const Real& xbar, const Real& pbar,
                                 const Real& kbar, UniformWrt wrt, const NeighborhoodSchedule& sched,
                                 const GridSpec& grid);

// S(p) = (F + G(., p))^{-1}(0), closure.
IntervalSet robinson_solution_set(const PiecewiseMultifunction& f, const ParametricMultifunction& g,
                                  const Real& p);

ModulusReport robinson_modulus(const PiecewiseMultifunction& f, const ParametricMultifunction& g,
                               const Real& xbar, const Real& pbar, const NeighborhoodSchedule& sched,
                               const GridSpec& grid);

}  // namespace vwb

#endif  // VWB_REGULARITY_HPP_
