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

#ifndef VWB_MULTIFUNCTION_HPP_
#define VWB_MULTIFUNCTION_HPP_

#include <optional>
#include <string>
#include <vector>

#include "vwb/affine.hpp"
#include "vwb/interval_set.hpp"
#include "vwb/numeric.hpp"

namespace vwb {

// Convex piece of a graph: { (x, y) : x in range, max lower(x) <= y <= min upper(x) }.
// Empty lower (upper) means no bound below (above). Only the range ends
// may be open.
struct Cell {
  Range x;
  std::vector<Affine> lower;
  std::vector<Affine> upper;

  // Shrinks the range to the x where the section is nonempty; nullopt if
  // the cell is empty.
  static std::optional<Cell> make(Range x, std::vector<Affine> lower, std::vector<Affine> upper);

  Real lower_at(const Real& u) const { return max_of(lower, u); }
  Real upper_at(const Real& u) const { return min_of(upper, u); }
  std::optional<Interval> section(const Real& u) const;
  std::optional<Interval> closure_section(const Real& u) const;
  // Cell with range intersected by r, re-normalized.
  std::optional<Cell> restricted(const Range& r) const;
  // Closure of the cell with coordinates swapped.
  std::optional<Cell> swapped() const;
  // Cell translated vertically by k.
  Cell shifted(const Real& k) const;
  // Finite range ends and kinks of the bounding functions.
  std::vector<Real> breakpoints() const;
  bool is_exact() const;
  Cell to_float() const;
};

// Interval-valued band of a piece; `where` restricts it inside the piece.
struct Band {
  std::optional<Range> where;
  std::vector<Affine> lo;
  std::vector<Affine> hi;
};

struct Piece {
  std::string name;
  Range domain;
  std::vector<Band> bands;  // no bands: empty image on the domain
};

/// F: R =>> R given by finitely many pieces with affine-endpoint bands.
class PiecewiseMultifunction {
 public:
  PiecewiseMultifunction() = default;
  PiecewiseMultifunction(std::string name, Range domain, std::vector<Piece> pieces);

  // Single-valued affine map {a x + b}.
  static PiecewiseMultifunction affine(const std::string& name, const Real& a, const Real& b);
  // Constant map x |-> s.
  static PiecewiseMultifunction constant(const std::string& name, const IntervalSet& s);
  static PiecewiseMultifunction from_cells(const std::string& name, Range domain,
                                          const std::vector<Cell>& cells);

  // Pieces cover the domain and overlap only at endpoints.
  void validate() const;

  const std::string& name() const { return name_; }
  const Range& domain() const { return domain_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  const std::vector<Cell>& cells() const { return cells_; }

  IntervalSet image(const Real& x) const;  // throws OutOfDomain
  IntervalSet image_or_empty(const Real& x) const;
  // Union of closure sections of the cells whose range closure holds x.
  IntervalSet closure_fiber(const Real& x) const;
  // Closure of F^{-1}(y).
  IntervalSet preimage(const Real& y) const;
  // Image of the closed set [lo, hi] (closure).
  IntervalSet image_of_interval(const Real& lo, const Real& hi) const;
  PiecewiseMultifunction inverse() const;
  PiecewiseMultifunction renamed(const std::string& name) const;
  std::vector<Real> breakpoints() const;

  bool is_exact() const;
  Backend backend() const { return is_exact() ? Backend::rational : Backend::floating; }
  PiecewiseMultifunction to_float() const;

 private:
  std::string name_;
  Range domain_;
  std::vector<Piece> pieces_;
  std::vector<Cell> cells_;
};

using PMF = PiecewiseMultifunction;

PiecewiseMultifunction sum_mf(const PiecewiseMultifunction& f, const PiecewiseMultifunction& g);
IntervalSet image(const PiecewiseMultifunction& f, const Real& x);
// d(x, F^{-1}(y)); +inf when F^{-1}(y) is empty.
Real inverse_distance(const PiecewiseMultifunction& f, const Real& y, const Real& x);

struct Region {
  Real x_lo, x_hi, y_lo, y_hi;
};

enum class ClosedVerdict { closed, violation, inconclusive };
std::string to_string(ClosedVerdict v);

struct ClosednessReport {
  ClosedVerdict verdict = ClosedVerdict::closed;
  std::optional<std::pair<Real, Real>> witness;
  Backend backend = Backend::rational;
  std::size_t boundaries_checked = 0;
};

// Exact on piecewise-affine data: checks every open range end in the region.
ClosednessReport graph_closedness_probe(const PiecewiseMultifunction& f, const Region& region);

}  // namespace vwb

#endif  // VWB_MULTIFUNCTION_HPP_
