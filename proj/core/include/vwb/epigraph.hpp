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

#ifndef VWB_EPIGRAPH_HPP_
#define VWB_EPIGRAPH_HPP_

#include <optional>
#include <string>
#include <vector>

#include "vwb/envelope.hpp"
#include "vwb/multifunction.hpp"
#include "vwb/regularity.hpp"
#include "vwb/sampling.hpp"

namespace vwb {

// d((x,k),(u,z)) = max(|x-u|, |k-z|/lambda); lambda = 0 means the second
// coordinates must agree exactly (+inf otherwise).
struct ProductMetric {
  Real lambda;
  Real operator()(const Real& x, const Real& k, const Real& u, const Real& z) const;
};

/// E(x, k) = F(x) + k when k is in G(x), empty otherwise.
class EpigraphicalMF {
 public:
  EpigraphicalMF() = default;
  // No closedness check; see build_epigraphical.
  EpigraphicalMF(PiecewiseMultifunction f, PiecewiseMultifunction g, Real lambda);

  const PiecewiseMultifunction& f() const { return f_; }
  const PiecewiseMultifunction& g() const { return g_; }
  const Real& lambda() const { return lambda_; }
  ProductMetric metric() const { return {lambda_}; }
  bool is_exact() const { return f_.is_exact() && g_.is_exact() && lambda_.is_exact(); }

  IntervalSet value(const Real& x, const Real& k) const;
  bool on_graph_of_g(const Real& x, const Real& k) const;
  // G lower semicontinuous at (x, k), exact for piecewise-affine G.
  bool g_lsc_at(const Real& x, const Real& k) const;

  // Convex pieces of S_E(y) = {(u, z) : z in G(u), y in F(u) + z}.
  std::vector<Cell> solution_cells(const Real& y) const;
  bool in_solution_set(const Real& x, const Real& k, const Real& y) const;
  // d((x, k), S_E(y)) in the product metric.
  Real solution_distance(const Real& x, const Real& k, const Real& y) const;

 private:
  PiecewiseMultifunction f_;
  PiecewiseMultifunction g_;
  Real lambda_;
};

// d((x, k), union of cells) in the product metric with scale lambda.
Real product_distance_to_cells(const std::vector<Cell>& cells, const Real& x, const Real& k, const Real& lambda);

// Probes F and G for closedness over `region` (x range, value range);
// throws NotClosed on a certified violation.
EpigraphicalMF build_epigraphical(const PiecewiseMultifunction& f, const PiecewiseMultifunction& g,
                                  const Real& lambda, const Region& region);

struct EpiEnvelopeReport {
  EnvelopeValue full;          // liminf over gph G of d(y, F(u) + v)
  std::optional<Real> reduced;  // liminf_{u -> x} d(y, F(u) + k), when k is in G(x)
  bool g_lsc = false;
  bool agree = true;           // full == reduced whenever both exist
  bool discrepancy_flagged = false;  // disagreement with G not lsc at (x, k)
};

Real epi_envelope_exact(const EpigraphicalMF& e, const Real& x, const Real& k, const Real& y);
EpiEnvelopeReport epi_envelope(const EpigraphicalMF& e, const Real& x, const Real& k, const Real& y,
                               const NeighborhoodSchedule& sched, const GridSpec& grid);
Real epi_solution_distance(const EpigraphicalMF& e, const Real& x, const Real& k, const Real& y);

// Strong slope of (u, v) |-> phi_E((u, v), y) at (x, k) in the metric with
// scale `lambda`; exact for piecewise-affine data.
Real epi_envelope_slope(const EpigraphicalMF& e, const Real& x, const Real& k, const Real& y,
                        const Real& lambda);

struct Box3 {
  Real x_lo, x_hi, k_lo, k_hi, y_lo, y_hi;
};

struct ZeroSetMismatch {
  Real x, k, y;
  Real phi;
  bool in_solution_set;
};

struct ZeroSetReport {
  Verdict verdict = Verdict::inconclusive;
  std::optional<ZeroSetMismatch> mismatch;
  std::size_t points_checked = 0;
  Backend backend = Backend::rational;
};

// {(x,k): phi_E((x,k),y) = 0} against S_E(y) on samples of the box plus
// piece boundaries.
ZeroSetReport epi_zero_set_check(const EpigraphicalMF& e, const Box3& box, const GridSpec& grid);

// Regularity of E around ((xbar, kbar), ybar) in the product metric.
// With use_envelope the denominator is phi_E instead of d(y, E(x, k)).
ModulusReport epi_mr_modulus(const EpigraphicalMF& e, const Real& xbar, const Real& kbar, const Real& ybar,
                             const NeighborhoodSchedule& sched, const GridSpec& grid, bool use_envelope = false);

enum class StabilityVerdict { stable, unstable, inconclusive };
std::string to_string(StabilityVerdict v);

struct StabilityWitness {
  Real epsilon, delta, x, w;
};

struct StabilityRow {
  Real epsilon;
  std::optional<Real> delta;                // first delta that passed
  std::vector<StabilityWitness> failures;  // one per failing delta
};

struct SumStabilityReport {
  StabilityVerdict verdict = StabilityVerdict::inconclusive;
  bool shortcut_used = false;
  std::vector<StabilityRow> rows;
  std::optional<StabilityWitness> witness;
  Backend backend = Backend::rational;
};

// True when w = y + z for some y in F(x) n B(ybar, eps), z in G(x) n B(zbar, eps).
bool decomposes(const PiecewiseMultifunction& f, const PiecewiseMultifunction& g, const Real& x, const Real& w,
                const Real& ybar, const Real& zbar, const Real& eps);
// G(xbar) = {zbar} and G upper semicontinuous at xbar.
bool usc_singleton_at(const PiecewiseMultifunction& g, const Real& xbar, const Real& zbar);

SumStabilityReport sum_stability_probe(const PiecewiseMultifunction& f, const PiecewiseMultifunction& g,
                                       const Real& xbar, const Real& ybar, const Real& zbar,
                                       const std::vector<Real>& eps_list, const NeighborhoodSchedule& sched,
                                       const GridSpec& grid);

// Half the gap from kbar to the nearest other component of G(xbar); +inf
// when G(xbar) is connected.
Real default_theta(const PiecewiseMultifunction& g, const Real& xbar, const Real& kbar);

struct LocalizedWitness {
  Real x, y, lhs, rhs;
};

struct LocalizedEstimateReport {
  Verdict verdict = Verdict::inconclusive;
  Real theta;
  std::optional<LocalizedWitness> witness;
  std::vector<std::size_t> violations_per_radius;
  Backend backend = Backend::rational;
};

// d(x, (F+G)^{-1}(y)) <= tau d(y, F(x) + G(x) n B[kbar, theta]); the verdict
// is read at the smallest radius.
LocalizedEstimateReport localized_sum_estimate_check(const PiecewiseMultifunction& f,
                                                     const PiecewiseMultifunction& g, const Real& xbar,
                                                     const Real& kbar, const Real& ybar, const Real& tau,
                                                     const Real& theta, const NeighborhoodSchedule& sched,
                                                     const GridSpec& grid);

struct CoveringWitness {
  Real x, k, z, rho, rate;
};

struct CoveringReport {
  bool passed = false;
  Real required_rate;
  Real min_rate;
  std::optional<CoveringWitness> witness;
};

// B(k + z, rho * rate) inside (F+G)(B[x, rho]) for k in G(x), z in F(x) near
// the center; read at the smallest radius.
CoveringReport covering_check(const PiecewiseMultifunction& f, const PiecewiseMultifunction& g, const Real& xbar,
                              const Real& kbar, const Real& zbar, const Real& rate,
                              const NeighborhoodSchedule& sched, const GridSpec& grid);

struct SumTheoremReport {
  Real bound;  // (1/tau - lambda)^{-1}
  ModulusReport f_modulus;
  ModulusReport g_lipschitz;
  ModulusReport e_modulus;
  bool a_passed = false;
  bool b_ran = false;
  bool b_passed = false;
  std::string b_skip_reason;
  std::optional<ModulusReport> sum_modulus;
  // Standalone regularity of F+G, reported even when (b) is skipped.
  ModulusReport sum_standalone;
  SumStabilityReport stability;
  CoveringReport c;
};

SumTheoremReport sum_theorem_verify(const PiecewiseMultifunction& f, const PiecewiseMultifunction& g,
                                    const Real& xbar, const Real& kbar, const Real& ybar, const Real& tau,
                                    const Real& lambda, const NeighborhoodSchedule& sched, const GridSpec& grid,
                                    double tol = 1e-6);

// The standard pair F(x) = [-x, +inf) for x >= 0, {-1} otherwise; G = {0, 1}.
PiecewiseMultifunction counterexample_f();
PiecewiseMultifunction counterexample_g();

struct CounterexampleBundle {
  Real delta;
  PiecewiseMultifunction f, g, sum;
  Real x, y;                  // (-delta/2, -delta^2/2)
  Real dist_preimage;         // d(x, (F+G)^{-1}(y))
  Real dist_image;            // d(y, (F+G)(x))
  Real ratio;
  std::string ratio_formula;  // "(1+delta)/delta"
  StabilityWitness instability;  // x = w = delta/2 with eps = delta/4
  bool instability_verified = false;
};

CounterexampleBundle paper_counterexample(const Real& delta);

}  // namespace vwb

#endif  // VWB_EPIGRAPH_HPP_
