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

#ifndef VWB_NUMERIC_HPP_
#define VWB_NUMERIC_HPP_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace vwb {

/// Arithmetic backend that produced a value or verdict.
enum class Backend : std::uint8_t { rational, floating };

std::string to_string(Backend b);
Backend backend_from_string(std::string_view s);

/// Absolute tolerance of the floating backend.
inline constexpr double kFloatTolerance = 1e-9;

// A scalar on the extended real line. Finite values are either exact
// rationals or doubles; mixing the two yields a double.
class ExtendedReal {
 public:
  enum class Kind : std::uint8_t { finite, pos_inf, neg_inf };

  ExtendedReal();
  ExtendedReal(int v);   // NOLINT(google-explicit-constructor)
  ExtendedReal(long v);  // NOLINT(google-explicit-constructor)
  explicit ExtendedReal(const mpq_class& q);

  static ExtendedReal rational(long num, long den);
  static ExtendedReal from_double(double v);
  static ExtendedReal inf();
  static ExtendedReal neg_inf();

  // Accepts "a/b", integers, exact decimals ("0.25", "1e-3"), "inf",
  // "+inf", "-inf". Decimals are read exactly, never through a double.
  static ExtendedReal parse(std::string_view text);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  bool is_pos_inf() const { return kind_ == Kind::pos_inf; }
  bool is_neg_inf() const { return kind_ == Kind::neg_inf; }
  bool is_exact() const { return kind_ != Kind::finite || exact_; }
  Backend backend() const {
    return is_exact() ? Backend::rational : Backend::floating;
  }

  // Exact value; only valid for exact finite values.
  const mpq_class& q() const { return q_; }
  double to_double() const;
  int sign() const;

  // Canonical text: "a/b" or "a" for exact values, shortest round-trip
  // decimal for doubles, "inf" / "-inf" otherwise.
  std::string str() const;

  ExtendedReal to_float() const;
  // Exact rational equal to the stored double (identity on exact values).
  ExtendedReal to_exact() const;

  ExtendedReal operator-() const;
  ExtendedReal& operator+=(const ExtendedReal& o);
  ExtendedReal& operator-=(const ExtendedReal& o);
  ExtendedReal& operator*=(const ExtendedReal& o);
  ExtendedReal& operator/=(const ExtendedReal& o);

  friend ExtendedReal operator+(ExtendedReal a, const ExtendedReal& b) { return a += b; }
  friend ExtendedReal operator-(ExtendedReal a, const ExtendedReal& b) { return a -= b; }
  friend ExtendedReal operator*(ExtendedReal a, const ExtendedReal& b) { return a *= b; }
  friend ExtendedReal operator/(ExtendedReal a, const ExtendedReal& b) { return a /= b; }

  friend std::strong_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b);
  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

  // Bitwise-identical representation (same kind, same backend, same value).
  bool identical(const ExtendedReal& o) const;

 private:
  Kind kind_ = Kind::finite;
  bool exact_ = true;
  mpq_class q_;
  double f_ = 0.0;
};

using Real = ExtendedReal;

Real abs(const Real& v);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);
Real midpoint(const Real& a, const Real& b);
// Positive part [v]_+.
Real positive_part(const Real& v);

// Equality up to the backend tolerance: exact comparison when both are
// exact, absolute tolerance tol otherwise. Infinities agree only with
// themselves.
bool approx_equal(const Real& a, const Real& b, double tol = kFloatTolerance);
// a <= b + tol; tol = 0 gives the exact comparison.
bool approx_le(const Real& a, const Real& b, double tol = kFloatTolerance);
bool near_zero(const Real& v, double tol = kFloatTolerance);

bool all_exact(const std::vector<Real>& v);

}  // namespace vwb

#endif  // VWB_NUMERIC_HPP_
