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

#include "gausdisk/measures.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <sstream>

namespace gausdisk {

namespace {

constexpr mpfr_rnd_t rnd = MPFR_RNDN;

Real tolerance(Precision p, long slack_bits) {
  return ldexp(Real(1, p), -static_cast<long>(p.bits()) + slack_bits);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms, Precision p)
    : atoms_(std::move(atoms)), precision_(p) {
  require(!atoms_.empty(), "discrete measure needs at least one atom");
  Real total(p);
  for (const auto& atom : atoms_) {
    require(atom.mass.sign() >= 0, "atom masses must be nonnegative");
    total += atom.mass;
  }
  require(abs(total - 1L) <= tolerance(p, 16), "atom masses must sum to one");
  std::stable_sort(atoms_.begin(), atoms_.end(),
                   [](const Atom& l, const Atom& r) { return l.location < r.location; });
}

DiscreteMeasure DiscreteMeasure::from_rule(const QuadratureRule& rule) {
  std::vector<Atom> atoms;
  atoms.reserve(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) atoms.push_back({rule.nodes()[i], rule.weights()[i]});
  return DiscreteMeasure(std::move(atoms), rule.precision());
}

DiscreteMeasure DiscreteMeasure::point_mass(const Real& location) {
  return DiscreteMeasure({{location, Real(1, location.precision())}}, location.precision());
}

Real DiscreteMeasure::support_bound() const {
  return max(abs(atoms_.front().location), abs(atoms_.back().location));
}

bool DiscreteMeasure::symmetric() const {
  const Real tol = tolerance(precision_, 16);
  const std::size_t n = atoms_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Atom& lo = atoms_[i];
    const Atom& hi = atoms_[n - 1 - i];
    if (abs(lo.location + hi.location) > tol * max(Real(1, precision_), abs(hi.location))) return false;
    if (abs(lo.mass - hi.mass) > tol) return false;
  }
  return true;
}

TruncatedGaussian::TruncatedGaussian(Real a) : a_(std::move(a)) {
  require(a_ >= 1, "truncated Gaussian needs a >= 1");
}

bool is_symmetric(const Measure& m) {
  if (const auto* d = std::get_if<DiscreteMeasure>(&m)) return d->symmetric();
  return true;
}

std::optional<Real> support_bound(const Measure& m) {
  if (const auto* d = std::get_if<DiscreteMeasure>(&m)) return d->support_bound();
  if (const auto* t = std::get_if<TruncatedGaussian>(&m)) return t->a();
  return std::nullopt;
}

std::string describe(const Measure& m) {
  if (const auto* d = std::get_if<DiscreteMeasure>(&m)) {
    return "discrete(" + std::to_string(d->atoms().size()) + " atoms)";
  }
  if (const auto* t = std::get_if<TruncatedGaussian>(&m)) return "truncated a=" + t->a().to_decimal(12);
  return "gaussian";
}

Complex phi_cdf(const Complex& z, Precision p) {
  const double x = z.re().to_double();
  const double y = z.im().to_double();
  const double mod2 = x * x + y * y;
  require(mod2 <= 64.0 * 64.0, "phi_cdf needs |z| <= 64");

  // Series S(z) = sum_n (-1)^n z^{2n+1} / (2^n n! (2n+1)), Phi = 1/2 + S/sqrt(2 pi).
  // Terms peak near |z| e^{|z|^2/2}; the result scale is max(sqrt(2 pi), e^{Re(-z^2)/2}).
  const double ln2d = std::log(2.0);
  const double log2_peak = 0.5 * std::log2(std::max(mod2, 1.0)) + mod2 / (2.0 * ln2d);
  const double log2_scale = std::max(1.3, (y * y - x * x) / (2.0 * ln2d));
  const long target = -static_cast<long>(p.bits()) - 16 + static_cast<long>(std::floor(log2_scale));
  const double guard = std::max(0.0, log2_peak - log2_scale) + 32.0;
  const unsigned long wbits = p.bits() + 16 + static_cast<unsigned long>(std::ceil(guard));
  if (wbits > (1UL << 24)) fail(ErrorKind::precision_unachievable, "phi_cdf cancellation guard too large");
  const Precision w(wbits);

  Real zr = z.re().rounded(w), zi = z.im().rounded(w);
  Real z2r(w), z2i(w), pr = zr, pim = zi, tr(w), ti(w), sr = zr, si = zi;
  Real ac(w), bd(w), ad(w), bc(w);
  mpfr_mul(ac.get(), zr.get(), zr.get(), rnd);
  mpfr_mul(bd.get(), zi.get(), zi.get(), rnd);
  mpfr_sub(z2r.get(), ac.get(), bd.get(), rnd);
  mpfr_mul(z2i.get(), zr.get(), zi.get(), rnd);
  mpfr_mul_2ui(z2i.get(), z2i.get(), 1, rnd);

  for (long n = 1;; ++n) {
    // power *= z^2 / (-2n)
    mpfr_mul(ac.get(), pr.get(), z2r.get(), rnd);
    mpfr_mul(bd.get(), pim.get(), z2i.get(), rnd);
    mpfr_mul(ad.get(), pr.get(), z2i.get(), rnd);
    mpfr_mul(bc.get(), pim.get(), z2r.get(), rnd);
    mpfr_sub(pr.get(), ac.get(), bd.get(), rnd);
    mpfr_add(pim.get(), ad.get(), bc.get(), rnd);
    mpfr_div_si(pr.get(), pr.get(), -2 * n, rnd);
    mpfr_div_si(pim.get(), pim.get(), -2 * n, rnd);
    mpfr_div_si(tr.get(), pr.get(), 2 * n + 1, rnd);
    mpfr_div_si(ti.get(), pim.get(), 2 * n + 1, rnd);
    mpfr_add(sr.get(), sr.get(), tr.get(), rnd);
    mpfr_add(si.get(), si.get(), ti.get(), rnd);

    const bool zr0 = mpfr_zero_p(tr.get()) != 0;
    const bool zi0 = mpfr_zero_p(ti.get()) != 0;
    if (zr0 && zi0) break;
    // |t_{n+1}| / |t_n| <= |z|^2 / (2(n+1)); bound the tail geometrically.
    const double ratio = 1.0001 * mod2 / (2.0 * static_cast<double>(n + 1));
    if (ratio < 1.0) {
      long e = std::max(zr0 ? LONG_MIN : static_cast<long>(mpfr_get_exp(tr.get())),
                        zi0 ? LONG_MIN : static_cast<long>(mpfr_get_exp(ti.get()))) + 1;
      const double tail_log2 = static_cast<double>(e) + std::log2(ratio / (1.0 - ratio));
      if (tail_log2 <= static_cast<double>(target)) break;
    }
    if (n > 1000000) fail(ErrorKind::convergence_failure, "phi_cdf series did not terminate");
  }
  if (!mpfr_number_p(sr.get()) || !mpfr_number_p(si.get())) {
    fail(ErrorKind::precision_unachievable, "non-finite phi_cdf partial sum");
  }

  const Real inv_root = Real(1, w) / sqrt(ldexp(pi(w), 1));
  Real re = sr * inv_root;
  mpfr_add_d(re.get(), re.get(), 0.5, rnd);
  Real im = si * inv_root;
  return {re.rounded(p), im.rounded(p)};
}

Real q_tail(const Real& a) {
  require(a.sign() >= 0, "q_tail needs a >= 0");
  const Precision p = a.precision();
  const double ad = a.to_double();
  const unsigned long guard = static_cast<unsigned long>(std::ceil(ad * ad / (2.0 * std::log(2.0)))) + 32;
  const Precision wp = p.plus(guard);
  const Complex phi = phi_cdf(Complex(a.rounded(wp)), wp);
  return (Real(1, wp) - phi.re()).rounded(p);
}

namespace {

Complex half_square(const Complex& z) {
  Complex out = square(z);
  out.re() = ldexp(out.re(), -1);
  out.im() = ldexp(out.im(), -1);
  return out;
}

struct TruncatedParts {
  Complex gauss;      // e^{z^2/2}
  Complex numerator;  // Phi(a+z) + Phi(a-z) - 1
  Real denominator;   // 2 Phi(a) - 1
};

TruncatedParts truncated_parts(const TruncatedGaussian& m, const Complex& z) {
  const Precision p = max(m.precision(), z.precision());
  const Real a = m.a().rounded(p);
  const Complex zp = z.rounded(p);
  const Complex plus = phi_cdf(zp + a, p);
  // Phi(conj w) = conj Phi(w) holds exactly in the series arithmetic.
  const Complex minus = zp.re().is_zero() ? conj(plus) : phi_cdf(-zp + a, p);
  Complex numerator = plus + minus - Real(1, p);
  Real denominator = ldexp(phi_cdf(Complex(a), p).re(), 1) - 1L;
  return {exp(half_square(zp)), std::move(numerator), std::move(denominator)};
}

Complex discrete_laplace(const DiscreteMeasure& m, const Complex& z) {
  const Precision p = max(m.precision(), z.precision());
  const Complex zp = z.rounded(p);
  Complex sum(p);
  for (const auto& atom : m.atoms()) {
    sum += exp(zp * atom.location) * atom.mass;
  }
  return sum;
}

}  // namespace

Complex laplace(const Measure& m, const Complex& z) {
  if (const auto* d = std::get_if<DiscreteMeasure>(&m)) return discrete_laplace(*d, z);
  if (const auto* t = std::get_if<TruncatedGaussian>(&m)) {
    const TruncatedParts parts = truncated_parts(*t, z);
    return parts.gauss * parts.numerator / parts.denominator;
  }
  return exp(half_square(z));
}

Complex char_fn(const Measure& m, const Real& t) {
  return laplace(m, Complex(Real(t.precision()), t));
}

Complex b_error(const Measure& m, const Complex& z) {
  if (const auto* d = std::get_if<DiscreteMeasure>(&m)) {
    const Complex zp = z.rounded(max(d->precision(), z.precision()));
    return discrete_laplace(*d, zp) - exp(half_square(zp));
  }
  if (const auto* t = std::get_if<TruncatedGaussian>(&m)) {
    const TruncatedParts parts = truncated_parts(*t, z);
    return parts.gauss * (parts.numerator - parts.denominator) / parts.denominator;
  }
  return Complex(z.precision());
}

CfBoundReport cf_bound_check(const Real& a, std::span<const Real> t_grid) {
  require(a >= 1, "cf_bound_check needs a >= 1");
  require(!t_grid.empty(), "cf_bound_check needs a nonempty grid");
  const Precision p = a.precision();
  const Measure trunc = TruncatedGaussian(a);

  // Psi and e^{-t^2/2} are both even in t, so each |t| is evaluated once.
  std::vector<Real> radii;
  radii.reserve(t_grid.size());
  for (const auto& t : t_grid) radii.push_back(abs(t).rounded(p));
  std::sort(radii.begin(), radii.end(), [](const Real& l, const Real& r) { return l < r; });
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

  Real best(p);
  Real best_t(p);
  for (const auto& t : radii) {
    const Complex psi = char_fn(trunc, t);
    const Real gauss = exp(-ldexp(t * t, -1));
    const Real diff = abs(psi - gauss);
    if (diff > best) {
      best = diff;
      best_t = t;
    }
  }
  CfBoundReport report{a, best, best_t, ldexp(q_tail(a), 2),
                       ldexp(exp(-ldexp(a * a, -1)), 1), t_grid.size(), radii.size()};
  if (report.grid_max > report.tv_ceiling || report.tv_ceiling > report.gauss_ceiling) {
    fail(ErrorKind::invariant_violation,
         "characteristic-function chain broken at a=" + a.to_decimal(12) + ": grid max " +
             report.grid_max.to_decimal(12) + ", 4Q(a) " + report.tv_ceiling.to_decimal(12) +
             ", 2e^{-a^2/2} " + report.gauss_ceiling.to_decimal(12));
  }
  return report;
}

std::string to_csv(const DiscreteMeasure& m, int digits) {
  std::ostringstream out;
  out << "location,mass\n";
  for (const auto& atom : m.atoms()) {
    out << atom.location.to_decimal(digits) << ',' << atom.mass.to_decimal(digits) << '\n';
  }
  return out.str();
}

DiscreteMeasure discrete_from_csv(std::string_view text, Precision p) {
  std::vector<Atom> atoms;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    if (line.empty() || line.front() == '#' || line == "location,mass") continue;
    const auto comma = line.find(',');
    require(comma != std::string_view::npos, "measure CSV row needs two columns");
    atoms.push_back({Real(trim(line.substr(0, comma)), p), Real(trim(line.substr(comma + 1)), p)});
  }
  return DiscreteMeasure(std::move(atoms), p);
}

std::string to_text(const TruncatedGaussian& m) { return "truncated a=" + m.a().serialize(); }

TruncatedGaussian truncated_from_text(std::string_view text, Precision fallback) {
  text = trim(text);
  constexpr std::string_view prefix = "truncated a=";
  require(text.substr(0, prefix.size()) == prefix, "expected 'truncated a=<decimal>'");
  const std::string_view value = trim(text.substr(prefix.size()));
  if (value.find('@') != std::string_view::npos) return TruncatedGaussian(Real::deserialize(value));
  return TruncatedGaussian(Real(value, fallback));
}

}  // namespace gausdisk
