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

#include "vwb/scalar_function.hpp"

#include <algorithm>

#include "vwb/errors.hpp"
#include "vwb/sampling.hpp"

namespace vwb {

Real Quadratic::operator()(const Real& x) const {
  Real v = c0;
  if (c1.sign() != 0) v += c1 * x;
  if (c2.sign() != 0) v += c2 * x * x;
  return v;
}

Real Quadratic::derivative(const Real& x) const {
  Real d = c1;
  if (c2.sign() != 0) d += Real(2) * c2 * x;
  return d;
}

ScalarFunction::ScalarFunction(std::vector<ScalarBranch> branches) : branches_(std::move(branches)) {
  for (ScalarBranch& b : branches_) b.domain = b.domain.closure();
}

ScalarFunction ScalarFunction::abs_value() {
  return ScalarFunction({{Range::all(), {{Real(0), Real(1), Real(0)}, {Real(0), Real(-1), Real(0)}}}});
}

ScalarFunction ScalarFunction::square() {
  return ScalarFunction({{Range::all(), {{Real(1), Real(0), Real(0)}}}});
}

ScalarFunction ScalarFunction::affine(const Real& a, const Real& b) {
  return ScalarFunction({{Range::all(), {{Real(0), a, b}}}});
}

ScalarFunction ScalarFunction::max_affine(const std::vector<Affine>& terms, Range domain) {
  ScalarBranch b{std::move(domain), {}};
  for (const Affine& t : terms) b.terms.push_back(Quadratic::from_affine(t));
  return ScalarFunction({std::move(b)});
}

namespace {

Real branch_value(const ScalarBranch& b, const Real& x) {
  Real v = Real::neg_inf();
  for (const Quadratic& q : b.terms) v = max(v, q(x));
  return v;
}

}  // namespace

Real ScalarFunction::operator()(const Real& x) const {
  Real v = Real::inf();
  for (const ScalarBranch& b : branches_) {
    if (b.domain.contains(x)) v = vwb::min(v, branch_value(b, x));
  }
  return v;
}

ScalarFunction ScalarFunction::scaled(const Real& c) const {
  if (c.sign() <= 0) throw PreconditionViolated("scaling factor must be positive");
  ScalarFunction out = *this;
  for (ScalarBranch& b : out.branches_) {
    for (Quadratic& q : b.terms) q = q.scaled(c);
  }
  return out;
}

std::vector<Real> ScalarFunction::breakpoints() const {
  std::vector<Real> out;
  for (const ScalarBranch& b : branches_) {
    if (b.domain.lo.is_finite()) out.push_back(b.domain.lo);
    if (b.domain.hi.is_finite()) out.push_back(b.domain.hi);
    for (std::size_t i = 0; i < b.terms.size(); ++i) {
      for (std::size_t j = i + 1; j < b.terms.size(); ++j) {
        const Quadratic& p = b.terms[i];
        const Quadratic& q = b.terms[j];
        if (p.c2 == q.c2 && p.c1 != q.c1) {
          Real x = (q.c0 - p.c0) / (p.c1 - q.c1);
          if (b.domain.contains(x)) out.push_back(x);
        }
      }
    }
  }
  sort_unique(out);
  return out;
}

bool ScalarFunction::is_exact() const {
  for (const ScalarBranch& b : branches_) {
    if (!b.domain.is_exact()) return false;
    for (const Quadratic& q : b.terms) {
      if (!q.c0.is_exact() || !q.c1.is_exact() || !q.c2.is_exact()) return false;
    }
  }
  return true;
}

Real ScalarFunction::exact_slope(const Real& x) const {
  const Real fx = (*this)(x);
  if (!fx.is_finite()) return Real::inf();
  Real best(0);
  for (int dir : {1, -1}) {
    Real limit = Real::inf();
    Real rate = Real::neg_inf();
    for (const ScalarBranch& b : branches_) {
      if (!b.domain.contains(x)) continue;
      if (dir > 0 ? !(x < b.domain.hi) : !(b.domain.lo < x)) continue;
      const Real v = branch_value(b, x);
      // One-sided derivative of the max along dir; descent rate is its negation.
      Real d = Real::neg_inf();
      for (const Quadratic& q : b.terms) {
        if (q(x) == v) d = max(d, q.derivative(x) * Real(dir));
      }
      const Real r = -d;
      if (v < limit) {
        limit = v;
        rate = r;
      } else if (v == limit) {
        rate = max(rate, r);
      }
    }
    if (limit.is_pos_inf()) continue;
    if (limit < fx) return Real::inf();
    if (limit == fx) best = max(best, rate);
  }
  return best;
}

ParamFunction ParamFunction::leaf(const Affine2& a) {
  ParamFunction f;
  f.leaf_ = a;
  return f;
}

ParamFunction ParamFunction::max(std::vector<ParamFunction> args) {
  if (args.empty()) throw ValidationError("max of no arguments");
  ParamFunction f;
  f.op_ = Op::max;
  f.args_ = std::move(args);
  return f;
}

ParamFunction ParamFunction::min(std::vector<ParamFunction> args) {
  if (args.empty()) throw ValidationError("min of no arguments");
  ParamFunction f;
  f.op_ = Op::min;
  f.args_ = std::move(args);
  return f;
}

ParamFunction ParamFunction::abs(ParamFunction arg) {
  ParamFunction f;
  f.op_ = Op::abs;
  f.args_.push_back(std::move(arg));
  return f;
}

Real ParamFunction::operator()(const Real& x, const Real& p) const {
  switch (op_) {
    case Op::leaf: return leaf_(x, p);
    case Op::abs: return vwb::abs(args_[0](x, p));
    case Op::max:
    case Op::min: {
      Real v = args_[0](x, p);
      for (std::size_t i = 1; i < args_.size(); ++i) {
        v = op_ == Op::max ? vwb::max(v, args_[i](x, p)) : vwb::min(v, args_[i](x, p));
      }
      return v;
    }
  }
  return Real(0);
}

IntervalSet ParamFunction::sublevel(const Real& p) const { return sublevel_signed(p, 1); }

// { x : sign * f(x, p) <= 0 }.
IntervalSet ParamFunction::sublevel_signed(const Real& p, int sign) const {
  switch (op_) {
    case Op::leaf: {
      const Real s(sign);
      const Real a = leaf_.ax * s;
      const Real c = (leaf_.ap.sign() == 0 ? leaf_.c : leaf_.ap * p + leaf_.c) * s;
      if (a.sign() == 0) return c.sign() <= 0 ? IntervalSet::whole() : IntervalSet();
      const Real root = -c / a;
      return a.sign() > 0 ? IntervalSet::closed(Real::neg_inf(), root) : IntervalSet::closed(root, Real::inf());
    }
    case Op::abs:
      if (sign < 0) return IntervalSet::whole();
      return args_[0].sublevel_signed(p, 1).intersect(args_[0].sublevel_signed(p, -1));
    case Op::max:
    case Op::min: {
      // sign*max <= 0 is an intersection; -max = min(-.) turns it into a union.
      const bool intersect = (op_ == Op::max) == (sign > 0);
      IntervalSet acc = args_[0].sublevel_signed(p, sign);
      for (std::size_t i = 1; i < args_.size(); ++i) {
        IntervalSet s = args_[i].sublevel_signed(p, sign);
        acc = intersect ? acc.intersect(s) : acc.unite(s);
      }
      return acc;
    }
  }
  return {};
}

bool ParamFunction::is_exact() const {
  if (op_ == Op::leaf) return leaf_.is_exact();
  return std::all_of(args_.begin(), args_.end(), [](const ParamFunction& a) { return a.is_exact(); });
}

ParamFunction ParamFunction::to_float() const {
  ParamFunction f = *this;
  f.leaf_ = leaf_.to_float();
  for (ParamFunction& a : f.args_) a = a.to_float();
  return f;
}

std::string ParamFunction::str() const {
  switch (op_) {
    case Op::leaf:
      return "(" + leaf_.ax.str() + "*x+" + leaf_.ap.str() + "*p+" + leaf_.c.str() + ")";
    case Op::abs: return "abs" + args_[0].str();
    case Op::max:
    case Op::min: {
      std::string s = op_ == Op::max ? "max(" : "min(";
      for (std::size_t i = 0; i < args_.size(); ++i) s += (i ? "," : "") + args_[i].str();
      return s + ")";
    }
  }
  return "";
}

}  // namespace vwb
