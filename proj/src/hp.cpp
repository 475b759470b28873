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

#include "gausdisk/hp.hpp"

#include <gmp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <memory>

namespace gausdisk {

namespace {

constexpr mpfr_rnd_t rnd = MPFR_RNDN;

void check_finite(mpfr_srcptr x, const char* op) {
  if (!mpfr_number_p(x)) {
    fail(ErrorKind::precision_unachievable,
         std::string("non-finite result in ") + op);
  }
}

struct MpfrString {
  char* text;
  ~MpfrString() { mpfr_free_str(text); }
};

// Decimal digits `digits`, decimal exponent `exp` with value 0.digits * 10^exp.
struct DecimalDigits {
  bool negative = false;
  std::string digits;
  long exp = 0;
};

DecimalDigits decimal_digits(mpfr_srcptr x, std::size_t n) {
  mpfr_exp_t e = 0;
  MpfrString s{mpfr_get_str(nullptr, &e, 10, n, x, rnd)};
  DecimalDigits out;
  std::string_view view(s.text);
  if (!view.empty() && view.front() == '-') {
    out.negative = true;
    view.remove_prefix(1);
  }
  out.digits = std::string(view);
  out.exp = static_cast<long>(e);
  return out;
}

std::size_t round_trip_digits(mpfr_prec_t bits) {
  return mpfr_get_str_ndigits(10, bits);
}

}  // namespace

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::precision_unachievable: return "precision-unachievable";
    case ErrorKind::convergence_failure: return "convergence-failure";
    case ErrorKind::support_violation: return "support-violation";
    case ErrorKind::invariant_violation: return "invariant-violation";
    case ErrorKind::insufficient_data: return "insufficient-data";
    case ErrorKind::io_failure: return "io-failure";
  }
  return "unknown";
}

Precision::Precision(unsigned long bits) : bits_(bits) {
  require(bits >= min_bits, "precision must be at least 64 bits");
  require(bits <= static_cast<unsigned long>(MPFR_PREC_MAX), "precision too large");
}

Precision precision_policy(double support, double radius) {
  require(std::isfinite(support) && support >= 0, "support bound must be finite and nonnegative");
  require(std::isfinite(radius) && radius >= 0, "radius must be finite and nonnegative");
  const double a = support;
  const double spread = 3.0 * a * a * std::log2(std::max(a, 2.0));
  const double cancel = (a + radius) * (a + radius) / std::log(2.0);
  const double bits = std::ceil(spread) + std::ceil(cancel) + 64.0;
  return Precision(static_cast<unsigned long>(std::max(128.0, bits)));
}

// ---- Real ----------------------------------------------------------------

Real::Real(Precision p) {
  mpfr_init2(value_, static_cast<mpfr_prec_t>(p.bits()));
  mpfr_set_zero(value_, 1);
}

Real::Real(long value, Precision p) : Real(p) { mpfr_set_si(value_, value, rnd); }

Real::Real(double value, Precision p) : Real(p) {
  require(std::isfinite(value), "non-finite double");
  mpfr_set_d(value_, value, rnd);
}

Real::Real(std::string_view decimal, Precision p) : Real(p) {
  const std::string text(decimal);
  if (text.empty() || mpfr_set_str(value_, text.c_str(), 10, rnd) != 0) {
    fail(ErrorKind::invalid_argument, "cannot parse decimal '" + text + "'");
  }
  check_finite(value_, "decimal parse");
}

Real::Real(const Real& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, rnd);
}

Real::Real(Real&& other) noexcept {
  *value_ = *other.value_;
  other.value_->_mpfr_d = nullptr;
}

Real& Real::operator=(const Real& other) {
  if (this == &other) return *this;
  if (value_->_mpfr_d == nullptr) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
  } else {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
  }
  mpfr_set(value_, other.value_, rnd);
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this == &other) return *this;
  if (value_->_mpfr_d != nullptr) mpfr_clear(value_);
  *value_ = *other.value_;
  other.value_->_mpfr_d = nullptr;
  return *this;
}

Real::~Real() {
  if (value_->_mpfr_d != nullptr) mpfr_clear(value_);
}

Precision Real::precision() const noexcept {
  return Precision(static_cast<unsigned long>(mpfr_get_prec(value_)));
}

Real Real::rounded(Precision p) const {
  Real out(p);
  mpfr_set(out.value_, value_, rnd);
  return out;
}

void Real::raise_to(Precision p) {
  if (p.bits() > static_cast<unsigned long>(mpfr_get_prec(value_))) {
    mpfr_prec_round(value_, static_cast<mpfr_prec_t>(p.bits()), rnd);
  }
}

double Real::to_double() const noexcept { return mpfr_get_d(value_, rnd); }
int Real::sign() const noexcept { return mpfr_sgn(value_); }
bool Real::is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }

std::string Real::to_decimal(int digits) const {
  if (is_zero()) return "0";
  const std::size_t n = digits > 0 ? static_cast<std::size_t>(digits)
                                   : round_trip_digits(mpfr_get_prec(value_));
  DecimalDigits d = decimal_digits(value_, n);
  while (d.digits.size() > 1 && d.digits.back() == '0') d.digits.pop_back();
  std::string out;
  if (d.negative) out.push_back('-');
  const long point = d.exp;  // value = 0.digits * 10^point
  const auto len = static_cast<long>(d.digits.size());
  if (point > 0 && point <= 21) {
    if (len <= point) {
      out += d.digits + std::string(static_cast<std::size_t>(point - len), '0');
    } else {
      out += d.digits.substr(0, static_cast<std::size_t>(point)) + "." +
             d.digits.substr(static_cast<std::size_t>(point));
    }
    return out;
  }
  if (point <= 0 && point > -6) {
    out += "0." + std::string(static_cast<std::size_t>(-point), '0') + d.digits;
    return out;
  }
  out.push_back(d.digits.front());
  if (d.digits.size() > 1) {
    out.push_back('.');
    out.append(d.digits, 1);
  }
  out.push_back('e');
  out.append(std::to_string(d.exp - 1));
  return out;
}

std::string Real::serialize() const {
  const auto bits = mpfr_get_prec(value_);
  if (is_zero()) return (mpfr_signbit(value_) ? "-0e0@" : "+0e0@") + std::to_string(bits);
  const std::size_t n = round_trip_digits(bits);
  const DecimalDigits d = decimal_digits(value_, n);
  const long exp = d.exp - static_cast<long>(d.digits.size());
  return (d.negative ? "-" : "+") + d.digits + "e" + std::to_string(exp) + "@" +
         std::to_string(bits);
}

Real Real::deserialize(std::string_view text) {
  const auto bad = [&] {
    fail(ErrorKind::invalid_argument, "malformed serialized real '" + std::string(text) + "'");
  };
  const auto at = text.rfind('@');
  if (at == std::string_view::npos || text.size() < 4) bad();
  unsigned long bits = 0;
  const auto bits_text = text.substr(at + 1);
  const auto [ptr, ec] = std::from_chars(bits_text.data(), bits_text.data() + bits_text.size(), bits);
  if (ec != std::errc() || ptr != bits_text.data() + bits_text.size()) bad();

  const auto body = text.substr(0, at);
  if (body.empty() || (body[0] != '+' && body[0] != '-')) bad();
  const auto e = body.find('e');
  if (e == std::string_view::npos || e < 2) bad();
  for (std::size_t i = 1; i < e; ++i) {
    if (body[i] < '0' || body[i] > '9') bad();
  }
  long exp = 0;
  const auto exp_text = body.substr(e + 1);
  const auto [eptr, eec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exp);
  if (eec != std::errc() || eptr != exp_text.data() + exp_text.size()) bad();

  Real out{std::string(body), Precision(bits)};
  if (body[0] == '-' && out.is_zero()) mpfr_setsign(out.value_, out.value_, 1, rnd);
  return out;
}

Real& Real::operator+=(const Real& rhs) {
  raise_to(rhs.precision());
  mpfr_add(value_, value_, rhs.value_, rnd);
  check_finite(value_, "add");
  return *this;
}

Real& Real::operator-=(const Real& rhs) {
  raise_to(rhs.precision());
  mpfr_sub(value_, value_, rhs.value_, rnd);
  check_finite(value_, "sub");
  return *this;
}

Real& Real::operator*=(const Real& rhs) {
  raise_to(rhs.precision());
  mpfr_mul(value_, value_, rhs.value_, rnd);
  check_finite(value_, "mul");
  return *this;
}

Real& Real::operator/=(const Real& rhs) {
  raise_to(rhs.precision());
  mpfr_div(value_, value_, rhs.value_, rnd);
  check_finite(value_, "div");
  return *this;
}

Real& Real::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, rnd);
  check_finite(value_, "mul");
  return *this;
}

Real& Real::operator/=(long rhs) {
  mpfr_div_si(value_, value_, rhs, rnd);
  check_finite(value_, "div");
  return *this;
}

Real Real::operator-() const {
  Real out(*this);
  mpfr_neg(out.value_, out.value_, rnd);
  return out;
}

namespace {

template <typename F>
Real binary(const Real& a, const Real& b, F f, const char* name) {
  Real out(max(a.precision(), b.precision()));
  f(out.get(), a.get(), b.get(), rnd);
  check_finite(out.get(), name);
  return out;
}

template <typename F>
Real unary(const Real& x, F f, const char* name) {
  Real out(x.precision());
  f(out.get(), x.get(), rnd);
  check_finite(out.get(), name);
  return out;
}

}  // namespace

Real operator+(const Real& a, const Real& b) { return binary(a, b, mpfr_add, "add"); }
Real operator-(const Real& a, const Real& b) { return binary(a, b, mpfr_sub, "sub"); }
Real operator*(const Real& a, const Real& b) { return binary(a, b, mpfr_mul, "mul"); }
Real operator/(const Real& a, const Real& b) { return binary(a, b, mpfr_div, "div"); }

Real operator*(const Real& a, long b) {
  Real out(a);
  out *= b;
  return out;
}
Real operator*(long a, const Real& b) { return b * a; }
Real operator/(const Real& a, long b) {
  Real out(a);
  out /= b;
  return out;
}
Real operator+(const Real& a, long b) {
  Real out(a);
  mpfr_add_si(out.get(), out.get(), b, rnd);
  check_finite(out.get(), "add");
  return out;
}
Real operator-(const Real& a, long b) {
  Real out(a);
  mpfr_sub_si(out.get(), out.get(), b, rnd);
  check_finite(out.get(), "sub");
  return out;
}

bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.get(), b.get()) != 0; }

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.get(), b.get())) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.get(), b.get());
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.get(), b) == 0; }

std::partial_ordering operator<=>(const Real& a, long b) {
  const int c = mpfr_cmp_si(a.get(), b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const Real& a, double b) {
  const int c = mpfr_cmp_d(a.get(), b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

Real abs(const Real& x) { return unary(x, mpfr_abs, "abs"); }
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt, "sqrt"); }
Real exp(const Real& x) { return unary(x, mpfr_exp, "exp"); }
Real log(const Real& x) { return unary(x, mpfr_log, "log"); }
Real log2(const Real& x) { return unary(x, mpfr_log2, "log2"); }
Real sin(const Real& x) { return unary(x, mpfr_sin, "sin"); }
Real cos(const Real& x) { return unary(x, mpfr_cos, "cos"); }

Real pow(const Real& x, long n) {
  Real out(x.precision());
  mpfr_pow_si(out.get(), x.get(), n, rnd);
  check_finite(out.get(), "pow");
  return out;
}

Real pow(const Real& x, const Real& y) { return binary(x, y, mpfr_pow, "pow"); }
Real hypot(const Real& x, const Real& y) { return binary(x, y, mpfr_hypot, "hypot"); }
Real atan2(const Real& y, const Real& x) { return binary(y, x, mpfr_atan2, "atan2"); }

Real ceil(const Real& x) {
  Real out(x.precision());
  mpfr_ceil(out.get(), x.get());
  return out;
}

Real floor(const Real& x) {
  Real out(x.precision());
  mpfr_floor(out.get(), x.get());
  return out;
}

Real ldexp(const Real& x, long e) {
  Real out(x.precision());
  mpfr_mul_2si(out.get(), x.get(), e, rnd);
  check_finite(out.get(), "ldexp");
  return out;
}

const Real& max(const Real& a, const Real& b) { return a < b ? b : a; }
const Real& min(const Real& a, const Real& b) { return b < a ? b : a; }

Real pi(Precision p) {
  Real out(p);
  mpfr_const_pi(out.get(), rnd);
  return out;
}

Real ln2(Precision p) {
  Real out(p);
  mpfr_const_log2(out.get(), rnd);
  return out;
}

Real factorial(unsigned long n, Precision p) {
  Real out(p);
  mpfr_fac_ui(out.get(), n, rnd);
  check_finite(out.get(), "factorial");
  return out;
}

namespace {

struct Mpz {
  mpz_t v;
  Mpz() { mpz_init(v); }
  ~Mpz() { mpz_clear(v); }
  Mpz(const Mpz&) = delete;
  Mpz& operator=(const Mpz&) = delete;
};

}  // namespace

Real double_factorial(long n, Precision p) {
  require(n >= -1, "double factorial needs n >= -1");
  Mpz z;
  if (n <= 0) {
    mpz_set_ui(z.v, 1);
  } else {
    mpz_2fac_ui(z.v, static_cast<unsigned long>(n));
  }
  Real out(p);
  mpfr_set_z(out.get(), z.v, rnd);
  return out;
}

Real double_factorial(long n) {
  require(n >= -1, "double factorial needs n >= -1");
  Mpz z;
  if (n <= 0) {
    mpz_set_ui(z.v, 1);
  } else {
    mpz_2fac_ui(z.v, static_cast<unsigned long>(n));
  }
  const auto bits = std::max<unsigned long>(Precision::min_bits, mpz_sizeinbase(z.v, 2));
  Real out{Precision(bits)};
  mpfr_set_z(out.get(), z.v, rnd);
  return out;
}

long to_long(const Real& x) { return mpfr_get_si(x.get(), rnd); }

// ---- Complex ---------------------------------------------------------------

Complex::Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}

Complex& Complex::operator+=(const Complex& rhs) {
  re_ += rhs.re_;
  im_ += rhs.im_;
  return *this;
}

Complex& Complex::operator-=(const Complex& rhs) {
  re_ -= rhs.re_;
  im_ -= rhs.im_;
  return *this;
}

Complex& Complex::operator*=(const Complex& rhs) {
  const Precision p = max(precision(), rhs.precision());
  Real ac(p), bd(p), ad(p), bc(p);
  mpfr_mul(ac.get(), re_.get(), rhs.re_.get(), rnd);
  mpfr_mul(bd.get(), im_.get(), rhs.im_.get(), rnd);
  mpfr_mul(ad.get(), re_.get(), rhs.im_.get(), rnd);
  mpfr_mul(bc.get(), im_.get(), rhs.re_.get(), rnd);
  re_ = Real(p);
  im_ = Real(p);
  mpfr_sub(re_.get(), ac.get(), bd.get(), rnd);
  mpfr_add(im_.get(), ad.get(), bc.get(), rnd);
  check_finite(re_.get(), "complex mul");
  check_finite(im_.get(), "complex mul");
  return *this;
}

Complex& Complex::operator*=(const Real& rhs) {
  re_ *= rhs;
  im_ *= rhs;
  return *this;
}

Complex& Complex::operator/=(const Real& rhs) {
  re_ /= rhs;
  im_ /= rhs;
  return *this;
}

Complex operator+(const Complex& a, const Complex& b) {
  Complex out(a);
  out += b;
  return out;
}

Complex operator-(const Complex& a, const Complex& b) {
  Complex out(a);
  out -= b;
  return out;
}

Complex operator*(const Complex& a, const Complex& b) {
  Complex out(a);
  out *= b;
  return out;
}

Complex operator/(const Complex& a, const Complex& b) {
  const Real denom = b.re() * b.re() + b.im() * b.im();
  require(!denom.is_zero(), "complex division by zero");
  return {(a.re() * b.re() + a.im() * b.im()) / denom,
          (a.im() * b.re() - a.re() * b.im()) / denom};
}

Complex operator*(const Complex& a, const Real& b) {
  Complex out(a);
  out *= b;
  return out;
}

Complex operator*(const Real& a, const Complex& b) { return b * a; }

Complex operator/(const Complex& a, const Real& b) {
  Complex out(a);
  out /= b;
  return out;
}

Complex operator+(const Complex& a, const Real& b) { return {a.re() + b, a.im()}; }
Complex operator-(const Complex& a, const Real& b) { return {a.re() - b, a.im()}; }

Complex conj(const Complex& z) { return {z.re(), -z.im()}; }
Real abs(const Complex& z) { return hypot(z.re(), z.im()); }
Complex times_i(const Complex& z) { return {-z.im(), z.re()}; }

Complex polar(const Real& radius, const Real& angle) {
  const Precision p = max(radius.precision(), angle.precision());
  Real s(p), c(p);
  mpfr_sin_cos(s.get(), c.get(), angle.get(), rnd);
  c *= radius;
  s *= radius;
  return {std::move(c), std::move(s)};
}

Complex square(const Complex& z) {
  Real re = (z.re() - z.im()) * (z.re() + z.im());
  Real im = ldexp(z.re() * z.im(), 1);
  return {std::move(re), std::move(im)};
}

namespace {

Complex exp_at(const Complex& z, Precision p) {
  Real s(p), c(p), m(p);
  mpfr_sin_cos(s.get(), c.get(), z.im().get(), rnd);
  mpfr_exp(m.get(), z.re().get(), rnd);
  check_finite(m.get(), "exp");
  c *= m;
  s *= m;
  return {std::move(c), std::move(s)};
}

}  // namespace

Complex exp(const Complex& z) { return exp_at(z, z.precision()); }

Complex exp_c(const Complex& z, Precision p) {
  require(abs(z) <= Real(1L << 20, Precision(64)), "exp_c argument exceeds 2^20");
  return exp_at(z, p);
}

}  // namespace gausdisk
