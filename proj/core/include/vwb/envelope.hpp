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

#ifndef VWB_ENVELOPE_HPP_
#define VWB_ENVELOPE_HPP_

#include <optional>
#include <vector>

#include "vwb/multifunction.hpp"
#include "vwb/parametric.hpp"
#include "vwb/sampling.hpp"
#include "vwb/scalar_function.hpp"

namespace vwb {

/// Per-radius infima of d(y, F(u)) over u in B(x, r_k). The trace ends with
/// the exact limit, recorded at radius 0, and `value` equals that entry.
struct EnvelopeValue {
  Real value;
  Trace trace;
  bool converged = false;
  Backend backend = Backend::rational;
};

EnvelopeValue lsc_envelope(const PiecewiseMultifunction& f, const Real& x, const Real& y,
                           const NeighborhoodSchedule& sched, const GridSpec& grid);

// phi_F(x, y) = liminf_{u -> x} d(y, F(u)), exact.
Real envelope_exact(const PiecewiseMultifunction& f, const Real& x, const Real& y);
// u |-> phi_F(u, y) as a min-of-max-affine function.
ScalarFunction envelope_function(const PiecewiseMultifunction& f, const Real& y);

struct SlopeEstimate {
  Real value;
  std::optional<Real> witness;  // best sampled descent point at the smallest radius
  Real witness_ratio = Real(0);
  Trace trace;                  // per-radius sampled suprema
  bool local_min = false;
  Backend backend = Backend::rational;
};

SlopeEstimate strong_slope(const ScalarFunction& f, const Real& x, const NeighborhoodSchedule& sched,
                           const GridSpec& grid);

struct ErrorBoundReport {
  Real constant;
  std::vector<std::pair<Real, Real>> witnesses;  // (x, p) attaining the sup
  Trace trace;
  Real radius;  // neighborhood used for the constant
  ModulusVerdict verdict = ModulusVerdict::inconclusive;
  Backend backend = Backend::rational;
};

// sup of d(x, S(p)) / [f(x,p)]_+ near (xbar, pbar); throws EmptySolutionSet.
ErrorBoundReport error_bound_constant(const ParamFunction& f, const Real& xbar, const Real& pbar,
                                      const NeighborhoodSchedule& sched, const GridSpec& grid);

struct SlopeWitness {
  Real x, y, p, phi, slope;
};

struct SlopeCriterionReport {
  Verdict verdict = Verdict::inconclusive;
  std::optional<SlopeWitness> witness;
  std::size_t points_checked = 0;
  std::vector<std::size_t> violations_per_radius;
  Backend backend = Backend::rational;
};

// |grad phi_p(., y)|(x) >= 1/tau wherever phi_p(x, y) lies in (0, gamma).
SlopeCriterionReport slope_criterion_probe(const ParametricMultifunction& family, const Real& xbar,
                                           const Real& ybar, const Real& pbar, const Real& tau,
                                           const Real& gamma, const NeighborhoodSchedule& sched,
                                           const GridSpec& grid);

}  // namespace vwb

#endif  // VWB_ENVELOPE_HPP_
