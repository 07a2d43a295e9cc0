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

#include "vwb/numeric.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <regex>

#include "vwb/errors.hpp"

namespace vwb {

std::string to_string(Backend b) {
  return b == Backend::rational ? "rational" : "float";
}

Backend backend_from_string(std::string_view s) {
  if (s == "rational" || s == "exact") return Backend::rational;
  if (s == "float" || s == "floating") return Backend::floating;
  throw ValidationError("unknown backend '" + std::string(s) + "'");
}

ExtendedReal::ExtendedReal() = default;
ExtendedReal::ExtendedReal(int v) : q_(v) {}
ExtendedReal::ExtendedReal(long v) : q_(v) {}
ExtendedReal::ExtendedReal(const mpq_class& q) : q_(q) { q_.canonicalize(); }

ExtendedReal ExtendedReal::rational(long num, long den) {
  if (den == 0) throw IndeterminateForm("zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return ExtendedReal(q);
}

ExtendedReal ExtendedReal::from_double(double v) {
  if (std::isnan(v)) throw IndeterminateForm("NaN");
  if (std::isinf(v)) return v > 0 ? inf() : neg_inf();
  ExtendedReal r;
  r.exact_ = false;
  r.q_ = 0;
  r.f_ = v == 0.0 ? 0.0 : v;
  return r;
}

ExtendedReal ExtendedReal::inf() {
  ExtendedReal r;
  r.kind_ = Kind::pos_inf;
  return r;
}

ExtendedReal ExtendedReal::neg_inf() {
  ExtendedReal r;
  r.kind_ = Kind::neg_inf;
  return r;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

mpq_class pow10(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? mpq_class(mpz_class(1), p) : mpq_class(p);
}

}  // namespace

ExtendedReal ExtendedReal::parse(std::string_view text) {
  const std::string_view s = trim(text);
  if (s == "inf" || s == "+inf") return inf();
  if (s == "-inf") return neg_inf();
  static const std::regex kFraction(R"(^([+-]?\d+)/(\d+)$)");
  static const std::regex kDecimal(R"(^([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?$)");
  const std::string str(s);
  std::smatch m;
  if (std::regex_match(str, m, kFraction)) {
    mpz_class num(m[1].str()[0] == '+' ? m[1].str().substr(1) : m[1].str(), 10);
    mpz_class den(m[2].str(), 10);
    if (den == 0) throw ParseError("zero denominator in '" + str + "'");
    mpq_class v(num, den);
    v.canonicalize();
    return ExtendedReal(v);
  }
  if (std::regex_match(str, m, kDecimal) && (m[2].length() > 0 || m[3].length() > 0)) {
    const std::string digits = m[2].str() + m[3].str();
    mpq_class q{mpz_class(digits.empty() ? "0" : digits, 10)};
    long exp10 = -static_cast<long>(m[3].length());
    if (m[4].matched) {
      if (m[4].length() > 6) throw ParseError("exponent out of range in '" + str + "'");
      exp10 += std::stol(m[4].str());
    }
    q *= pow10(exp10);
    if (m[1].str() == "-") q = -q;
    return ExtendedReal(q);
  }
  throw ParseError("cannot parse number '" + str + "'");
}

double ExtendedReal::to_double() const {
  switch (kind_) {
    case Kind::pos_inf: return std::numeric_limits<double>::infinity();
    case Kind::neg_inf: return -std::numeric_limits<double>::infinity();
    case Kind::finite: break;
  }
  return exact_ ? q_.get_d() : f_;
}

int ExtendedReal::sign() const {
  if (kind_ == Kind::pos_inf) return 1;
  if (kind_ == Kind::neg_inf) return -1;
  if (exact_) return sgn(q_);
  return (f_ > 0) - (f_ < 0);
}

std::string ExtendedReal::str() const {
  if (kind_ == Kind::pos_inf) return "inf";
  if (kind_ == Kind::neg_inf) return "-inf";
  if (exact_) return q_.get_str();
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), f_);
  return std::string(buf, res.ptr);
}

ExtendedReal ExtendedReal::to_float() const {
  if (kind_ != Kind::finite || !exact_) return *this;
  return from_double(q_.get_d());
}

ExtendedReal ExtendedReal::to_exact() const {
  if (is_exact()) return *this;
  return ExtendedReal(mpq_class(f_));
}

ExtendedReal ExtendedReal::operator-() const {
  ExtendedReal r = *this;
  if (kind_ == Kind::pos_inf) {
    r.kind_ = Kind::neg_inf;
  } else if (kind_ == Kind::neg_inf) {
    r.kind_ = Kind::pos_inf;
  } else if (exact_) {
    r.q_ = -q_;
  } else {
    r.f_ = f_ == 0.0 ? 0.0 : -f_;
  }
  return r;
}

ExtendedReal& ExtendedReal::operator+=(const ExtendedReal& o) {
  if (kind_ != Kind::finite || o.kind_ != Kind::finite) {
    if (kind_ != Kind::finite && o.kind_ != Kind::finite && kind_ != o.kind_) {
      throw IndeterminateForm("inf + (-inf)");
    }
    if (kind_ == Kind::finite) *this = o;
    return *this;
  }
  if (exact_ && o.exact_) {
    q_ += o.q_;
  } else {
    *this = from_double(to_double() + o.to_double());
  }
  return *this;
}

ExtendedReal& ExtendedReal::operator-=(const ExtendedReal& o) { return *this += -o; }

ExtendedReal& ExtendedReal::operator*=(const ExtendedReal& o) {
  if (kind_ != Kind::finite || o.kind_ != Kind::finite) {
    const int s = sign() * o.sign();
    if (s == 0) throw IndeterminateForm("inf * 0");
    *this = s > 0 ? inf() : neg_inf();
    return *this;
  }
  if (exact_ && o.exact_) {
    q_ *= o.q_;
  } else {
    *this = from_double(to_double() * o.to_double());
  }
  return *this;
}

ExtendedReal& ExtendedReal::operator/=(const ExtendedReal& o) {
  if (o.sign() == 0) throw IndeterminateForm("division by zero");
  if (o.kind_ != Kind::finite) {
    if (kind_ != Kind::finite) throw IndeterminateForm("inf / inf");
    const bool exact = exact_;
    *this = ExtendedReal(0);
    if (!exact) *this = from_double(0.0);
    return *this;
  }
  if (kind_ != Kind::finite) {
    if (o.sign() < 0) *this = -*this;
    return *this;
  }
  if (exact_ && o.exact_) {
    q_ /= o.q_;
  } else {
    *this = from_double(to_double() / o.to_double());
  }
  return *this;
}

std::strong_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b) {
  using K = ExtendedReal::Kind;
  auto rank = [](K k) { return k == K::neg_inf ? 0 : (k == K::finite ? 1 : 2); };
  if (a.kind_ != b.kind_) return rank(a.kind_) <=> rank(b.kind_);
  if (a.kind_ != K::finite) return std::strong_ordering::equal;
  int c = 0;
  if (a.exact_ && b.exact_) {
    c = cmp(a.q_, b.q_);
  } else if (!a.exact_ && !b.exact_) {
    c = (a.f_ > b.f_) - (a.f_ < b.f_);
  } else if (a.exact_) {
    c = cmp(a.q_, mpq_class(b.f_));
  } else {
    c = cmp(mpq_class(a.f_), b.q_);
  }
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

bool ExtendedReal::identical(const ExtendedReal& o) const {
  if (kind_ != o.kind_) return false;
  if (kind_ != Kind::finite) return true;
  if (exact_ != o.exact_) return false;
  return exact_ ? q_ == o.q_ : f_ == o.f_;
}

Real abs(const Real& v) { return v.sign() < 0 ? -v : v; }
Real min(const Real& a, const Real& b) { return b < a ? b : a; }
Real max(const Real& a, const Real& b) { return a < b ? b : a; }

Real midpoint(const Real& a, const Real& b) {
  if (!a.is_finite() || !b.is_finite()) throw IndeterminateForm("midpoint of unbounded interval");
  return (a + b) / Real(2);
}

Real positive_part(const Real& v) { return v.sign() > 0 ? v : (v.is_exact() ? Real(0) : Real::from_double(0.0)); }

bool approx_equal(const Real& a, const Real& b, double tol) {
  if (!a.is_finite() || !b.is_finite()) return a.kind() == b.kind();
  if (a.is_exact() && b.is_exact()) return a == b;
  return std::fabs(a.to_double() - b.to_double()) <= tol;
}

bool approx_le(const Real& a, const Real& b, double tol) {
  if (a <= b) return true;
  if (!a.is_finite() || !b.is_finite()) return false;
  if (a.is_exact() && b.is_exact()) return a <= b + Real(mpq_class(tol));
  return a.to_double() <= b.to_double() + tol;
}

bool near_zero(const Real& v, double tol) { return approx_equal(v, Real(0), tol); }

bool all_exact(const std::vector<Real>& v) {
  for (const Real& x : v) {
    if (!x.is_exact()) return false;
  }
  return true;
}

}  // namespace vwb
