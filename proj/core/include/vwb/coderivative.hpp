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

#ifndef VWB_CODERIVATIVE_HPP_
#define VWB_CODERIVATIVE_HPP_

#include <string>
#include <vector>

#include "vwb/interval_set.hpp"
#include "vwb/multifunction.hpp"
#include "vwb/numeric.hpp"

namespace vwb {

using Vec = std::vector<Real>;

Real dot(const Vec& a, const Vec& b);

// <a, x> <= b.
struct HalfSpace {
  Vec a;
  Real b;
};

/// Closed convex polyhedral cone {d : <a_i, d> <= 0} in dimension <= 4.
/// Generators, polars and equality are exact in dimension 2 only.
class Cone {
 public:
  Cone() = default;
  Cone(int dim, std::vector<Vec> rows);

  static Cone zero(int dim);
  static Cone whole(int dim) { return Cone(dim, {}); }
  // Conic hull of the generators (dimension 2).
  static Cone generated_by(int dim, const std::vector<Vec>& gens);

  int dim() const { return dim_; }
  const std::vector<Vec>& rows() const { return rows_; }
  bool contains(const Vec& d) const;
  // Canonical generators: scaled to max-norm 1, sorted by angle from the
  // positive x axis. Empty for the zero cone.
  std::vector<Vec> generators() const;
  Cone polar() const;
  Cone intersect(const Cone& o) const;
  bool subset_of(const Cone& o) const;
  bool is_zero() const { return generators().empty(); }
  bool operator==(const Cone& o) const { return subset_of(o) && o.subset_of(*this); }
  // "cone{(1, -1), (-1, -1)}", "{0}".
  std::string str() const;

 private:
  int dim_ = 2;
  std::vector<Vec> rows_;
};

class PolyhedralSet {
 public:
  PolyhedralSet() = default;
  PolyhedralSet(int dim, std::vector<HalfSpace> rows);
  // Closure of a graph cell as a subset of R^2.
  static PolyhedralSet from_cell(const Cell& c);

  int dim() const { return dim_; }
  const std::vector<HalfSpace>& rows() const { return rows_; }
  bool contains(const Vec& p) const;
  std::vector<std::size_t> active(const Vec& p) const;
  Cone tangent_cone(const Vec& p) const;  // throws PointNotInSet
  bool is_exact() const;
  // One row per line: "a1 a2 <= b".
  std::string str() const;

 private:
  int dim_ = 2;
  std::vector<HalfSpace> rows_;
};

using PolyhedralUnion = std::vector<PolyhedralSet>;

PolyhedralUnion graph_of(const PiecewiseMultifunction& f);

// Polar of the tangent cone of the union: the intersection of the polars of
// the tangent cones of the pieces that contain p.
Cone frechet_normal_cone(const PolyhedralUnion& u, const Vec& p);

// Distinct Frechet cones of the strata adjacent to p (dimension 2); their
// union is the limiting normal cone.
std::vector<Cone> limiting_normal_cone(const PolyhedralUnion& u, const Vec& p);

bool limiting_contains(const std::vector<Cone>& cones, const Vec& d);

enum class ConeKind { frechet, limiting };
std::string to_string(ConeKind k);
ConeKind cone_kind_from_string(const std::string& s);

// {x* : (x*, -y*) in K}.
IntervalSet cone_section(const Cone& k, const Real& ystar);

// D*F(x, y)(y*) = {x* : (x*, -y*) in N((x, y); gph F)}.
IntervalSet coderivative(const PiecewiseMultifunction& f, const Real& x, const Real& y, const Real& ystar,
                         ConeKind kind = ConeKind::frechet);

// Limiting coderivative at y* = 0; a cone of R given as an interval set.
IntervalSet coderivative_at_zero(const PiecewiseMultifunction& f, const Real& x, const Real& y);

struct HypothesisReport {
  bool holds = false;
  // Every satisfied condition: "(ii) G pseudo-Lipschitz", "(iii) qualification".
  std::vector<std::string> via;
  IntervalSet f_at_zero;   // D*F(xbar, zbar)(0)
  IntervalSet g_at_zero;   // D*G(xbar, kbar)(0)
  IntervalSet qualification;  // D*F(0) n -D*G(0)
  std::string psnc = "automatic (finite dimension)";
};

// zbar = ybar - kbar.
HypothesisReport hypothesis_H_check(const PiecewiseMultifunction& f, const PiecewiseMultifunction& g,
                                    const Real& xbar, const Real& kbar, const Real& zbar);

enum class KernelVerdict { predicts_regular, predicts_nothing };
std::string to_string(KernelVerdict v);

struct KernelReport {
  KernelVerdict verdict = KernelVerdict::predicts_nothing;
  IntervalSet kernel;  // {y* : 0 in D*F(y*) + D*G(y*)}
  bool psnc = true;
  bool qualification = false;  // D*F(0) n -D*G(0) = {0}
  std::string sequential_condition = "not directly verified (implied by polyhedral strata in finite dimension)";
};

KernelReport kernel_condition_check(const PiecewiseMultifunction& f, const PiecewiseMultifunction& g,
                                    const Real& xbar, const Real& kbar, const Real& ybar);

// Lower estimate of the strong slope of phi_E((.,.), y) at (x, k): the
// infimum of |x*| over x* in D^F(u, w)(y* + z*) + D^G(v, z)(y*) with
// |y*| = 1, |z*| <= delta, over the strata adjacent to the nearest graph
// points. delta = 0 gives the limit. Requires 0 <= delta < 1.
Real coderivative_slope_bound(const PiecewiseMultifunction& f, const PiecewiseMultifunction& g, const Real& x,
                              const Real& k, const Real& y, const Real& delta = Real(0));

}  // namespace vwb

#endif  // VWB_CODERIVATIVE_HPP_
