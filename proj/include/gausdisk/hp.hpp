// Copyright 2026 The gausdisk Authors
//
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

// Configurable-precision real and complex scalars.
//
// Every value carries its own binary precision. Binary operations produce a
// result at the larger of the two operand precisions and round to nearest.
// Any operation that would yield NaN or an infinity throws
// ErrorKind::precision_unachievable instead of propagating it.

#pragma once

#include <mpfr.h>

#include <compare>
#include <string>
#include <string_view>

#include "gausdisk/error.hpp"

namespace gausdisk {

class Precision {
 public:
  static constexpr unsigned long min_bits = 64;

  explicit Precision(unsigned long bits);

  unsigned long bits() const noexcept { return bits_; }
  Precision plus(unsigned long extra) const { return Precision(bits_ + extra); }

  auto operator<=>(const Precision&) const = default;

 private:
  unsigned long bits_;
};

inline Precision max(Precision a, Precision b) { return a < b ? b : a; }

// Working precision for a computation on a disk of radius `radius` against a
// measure supported on [-support, support]:
//   max(128, ceil(3 a^2 log2(max(a,2))) + ceil((a+R)^2 / ln 2) + 64).
Precision precision_policy(double support, double radius);

class Real {
 public:
  explicit Real(Precision p);
  Real(long value, Precision p);
  Real(int value, Precision p) : Real(static_cast<long>(value), p) {}
  Real(double value, Precision p);
  // Decimal text such as "1.5", "-3e-4". Rounded to nearest at p.
  Real(std::string_view decimal, Precision p);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  Precision precision() const noexcept;
  Real rounded(Precision p) const;

  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_ptr get() noexcept { return value_; }

  double to_double() const noexcept;
  int sign() const noexcept;
  bool is_zero() const noexcept;

  // `digits` significant decimal digits, positional for moderate magnitudes
  // and scientific otherwise. digits <= 0 selects the shortest count that
  // round-trips at this precision.
  std::string to_decimal(int digits = 0) const;

  // `<sign><digits>e<exp>@<bits>`, value = digits * 10^exp. Parsing the text
  // back with deserialize() reproduces the value bit for bit.
  std::string serialize() const;
  static Real deserialize(std::string_view text);

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);
  Real& operator*=(long rhs);
  Real& operator/=(long rhs);
  Real& operator*=(int rhs) { return *this *= static_cast<long>(rhs); }
  Real& operator/=(int rhs) { return *this /= static_cast<long>(rhs); }
  Real operator-() const;

 private:
  void raise_to(Precision p);

  mpfr_t value_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator*(const Real& a, long b);
Real operator*(long a, const Real& b);
Real operator/(const Real& a, long b);
Real operator+(const Real& a, long b);
Real operator-(const Real& a, long b);
inline Real operator*(const Real& a, int b) { return a * static_cast<long>(b); }
inline Real operator*(int a, const Real& b) { return b * static_cast<long>(a); }
inline Real operator/(const Real& a, int b) { return a / static_cast<long>(b); }
inline Real operator+(const Real& a, int b) { return a + static_cast<long>(b); }
inline Real operator-(const Real& a, int b) { return a - static_cast<long>(b); }

bool operator==(const Real& a, const Real& b);
std::partial_ordering operator<=>(const Real& a, const Real& b);
bool operator==(const Real& a, long b);
std::partial_ordering operator<=>(const Real& a, long b);
std::partial_ordering operator<=>(const Real& a, double b);
inline bool operator==(const Real& a, int b) { return a == static_cast<long>(b); }
inline std::partial_ordering operator<=>(const Real& a, int b) { return a <=> static_cast<long>(b); }

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real log2(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real pow(const Real& x, long n);
Real pow(const Real& x, const Real& y);
Real hypot(const Real& x, const Real& y);
Real atan2(const Real& y, const Real& x);
Real ceil(const Real& x);
Real floor(const Real& x);
Real ldexp(const Real& x, long e);
const Real& max(const Real& a, const Real& b);
const Real& min(const Real& a, const Real& b);

Real pi(Precision p);
Real ln2(Precision p);
Real factorial(unsigned long n, Precision p);
// n!! with (-1)!! = 0!! = 1. Exact whenever the integer fits in p bits.
Real double_factorial(long n, Precision p);
Real double_factorial(long n);  // at 64 bits or more, exact

// Integer value of a Real known to be integral and small.
long to_long(const Real& x);

class Complex {
 public:
  explicit Complex(Precision p) : re_(p), im_(p) {}
  explicit Complex(const Real& re) : re_(re), im_(re.precision()) {}
  Complex(Real re, Real im);
  Complex(double re, double im, Precision p) : re_(re, p), im_(im, p) {}

  const Real& re() const noexcept { return re_; }
  const Real& im() const noexcept { return im_; }
  Real& re() noexcept { return re_; }
  Real& im() noexcept { return im_; }

  Precision precision() const noexcept { return max(re_.precision(), im_.precision()); }
  Complex rounded(Precision p) const { return {re_.rounded(p), im_.rounded(p)}; }
  bool is_zero() const noexcept { return re_.is_zero() && im_.is_zero(); }

  Complex& operator+=(const Complex& rhs);
  Complex& operator-=(const Complex& rhs);
  Complex& operator*=(const Complex& rhs);
  Complex& operator*=(const Real& rhs);
  Complex& operator/=(const Real& rhs);
  Complex operator-() const { return {-re_, -im_}; }

 private:
  Real re_;
  Real im_;
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Real& b);
Complex operator*(const Real& a, const Complex& b);
Complex operator/(const Complex& a, const Real& b);
Complex operator+(const Complex& a, const Real& b);
Complex operator-(const Complex& a, const Real& b);

Complex conj(const Complex& z);
Real abs(const Complex& z);  // hypot, no intermediate overflow
Complex times_i(const Complex& z);
Complex polar(const Real& radius, const Real& angle);
Complex square(const Complex& z);

// e^z at z's precision.
Complex exp(const Complex& z);
// e^z rounded to p. Requires |z| <= 2^20.
Complex exp_c(const Complex& z, Precision p);

}  // namespace gausdisk
