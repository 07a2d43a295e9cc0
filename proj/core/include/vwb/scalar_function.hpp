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

#ifndef VWB_SCALAR_FUNCTION_HPP_
#define VWB_SCALAR_FUNCTION_HPP_

#include <memory>
#include <string>
#include <vector>

#include "vwb/affine.hpp"
#include "vwb/interval_set.hpp"
#include "vwb/parametric.hpp"

namespace vwb {

// c2*x^2 + c1*x + c0.
struct Quadratic {
  Real c2;
  Real c1;
  Real c0;

  static Quadratic from_affine(const Affine& a) { return {Real(0), a.a, a.b}; }
  Real operator()(const Real& x) const;
  Real derivative(const Real& x) const;
  Quadratic scaled(const Real& c) const { return {c2 * c, c1 * c, c0 * c}; }
};

// Branch on the closed interval `domain`: max of its terms.
struct ScalarBranch {
  Range domain;
  std::vector<Quadratic> terms;
};

/// f(x) = min over branches whose domain holds x of the branch value, and
/// +inf outside every branch.
class ScalarFunction {
 public:
  ScalarFunction() = default;
  explicit ScalarFunction(std::vector<ScalarBranch> branches);

  static ScalarFunction abs_value();      // |x|
  static ScalarFunction square();         // x^2
  static ScalarFunction affine(const Real& a, const Real& b);
  static ScalarFunction max_affine(const std::vector<Affine>& terms, Range domain = Range::all());

  const std::vector<ScalarBranch>& branches() const { return branches_; }
  Real operator()(const Real& x) const;
  ScalarFunction scaled(const Real& c) const;
  std::vector<Real> breakpoints() const;
  bool is_exact() const;

  // Exact strong slope from one-sided first-order expansions.
  Real exact_slope(const Real& x) const;

 private:
  std::vector<ScalarBranch> branches_;
};

/// f(x, p) built from affine leaves with max, min and abs.
class ParamFunction {
 public:
  enum class Op { leaf, max, min, abs };

  static ParamFunction leaf(const Affine2& a);
  static ParamFunction max(std::vector<ParamFunction> args);
  static ParamFunction min(std::vector<ParamFunction> args);
  static ParamFunction abs(ParamFunction arg);

  Op op() const { return op_; }
  const Affine2& affine() const { return leaf_; }
  const std::vector<ParamFunction>& args() const { return args_; }

  Real operator()(const Real& x, const Real& p) const;
  // S(p) = { x : f(x, p) <= 0 }, exact.
  IntervalSet sublevel(const Real& p) const;
  bool is_exact() const;
  ParamFunction to_float() const;
  std::string str() const;

 private:
  IntervalSet sublevel_signed(const Real& p, int sign) const;

  Op op_ = Op::leaf;
  Affine2 leaf_{Real(0), Real(0), Real(0)};
  std::vector<ParamFunction> args_;
};

}  // namespace vwb

#endif  // VWB_SCALAR_FUNCTION_HPP_
