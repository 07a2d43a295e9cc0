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

#ifndef VWB_PARAMETRIC_HPP_
#define VWB_PARAMETRIC_HPP_

#include <string>
#include <vector>

#include "vwb/affine.hpp"
#include "vwb/multifunction.hpp"

namespace vwb {

// ax*x + ap*p + c.
struct Affine2 {
  Real ax;
  Real ap;
  Real c;

  Real operator()(const Real& x, const Real& p) const;
  Affine at_p(const Real& p) const { return {ax, ap.sign() == 0 ? c : ap * p + c}; }
  Affine at_x(const Real& x) const { return {ap, ax.sign() == 0 ? c : ax * x + c}; }
  bool is_exact() const { return ax.is_exact() && ap.is_exact() && c.is_exact(); }
  Affine2 to_float() const { return {ax.to_float(), ap.to_float(), c.to_float()}; }
};

struct ParamBand {
  std::vector<Affine2> lo;
  std::vector<Affine2> hi;
};

struct ParamPiece {
  std::string name;
  Range x;
  Range p;
  std::vector<ParamBand> bands;
};

/// G: R x R =>> R, pieces affine in (x, p) on rectangles.
class ParametricMultifunction {
 public:
  ParametricMultifunction() = default;
  ParametricMultifunction(std::string name, Range x_domain, Range p_domain, std::vector<ParamPiece> pieces);

  // G(x, p) = F(x) + coeff * p.
  static ParametricMultifunction lift(const PiecewiseMultifunction& f, const Real& coeff);

  // For every p in a probe set, the slice satisfies the coverage invariants.
  void validate() const;

  const std::string& name() const { return name_; }
  const Range& x_domain() const { return x_domain_; }
  const Range& p_domain() const { return p_domain_; }
  const std::vector<ParamPiece>& pieces() const { return pieces_; }

  PiecewiseMultifunction slice_p(const Real& p) const;  // x |-> G(x, p)
  PiecewiseMultifunction slice_x(const Real& x) const;  // p |-> G(x, p)
  IntervalSet image(const Real& x, const Real& p) const;
  std::vector<Real> p_breakpoints() const;
  bool is_exact() const;
  Backend backend() const { return is_exact() ? Backend::rational : Backend::floating; }
  ParametricMultifunction to_float() const;

 private:
  std::string name_;
  Range x_domain_;
  Range p_domain_;
  std::vector<ParamPiece> pieces_;
};

using ParamMF = ParametricMultifunction;

}  // namespace vwb

#endif  // VWB_PARAMETRIC_HPP_
