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

#include "gausdisk/disk.hpp"

#include <sstream>

namespace gausdisk {

namespace {

struct ScanResult {
  Real value;
  Complex point;
  std::size_t samples;
  std::size_t iterations;
};

// Maximizes |f(point(s))| over s in [lo, hi]: uniform grid, then golden
// section around the best grid point, clamped to [lo, hi].
template <typename PointFn>
ScanResult scan_and_refine(const AnalyticFn& f, PointFn point, const Real& lo, const Real& hi,
                           bool closed, const ScanOptions& options) {
  const std::size_t n = options.n_samples;
  const Precision p = lo.precision();
  const Real step = (hi - lo) / static_cast<long>(closed ? n - 1 : n);

  Real best_s = lo;
  Complex best_z = point(lo);
  Real best_v = abs(f(best_z));
  std::size_t best_index = 0;
  for (std::size_t j = 1; j < n; ++j) {
    Real s = lo + step * static_cast<long>(j);
    Complex z = point(s);
    Real v = abs(f(z));
    if (v > best_v) {
      best_v = std::move(v);
      best_s = std::move(s);
      best_z = std::move(z);
      best_index = j;
    }
  }

  std::size_t iterations = 0;
  if (options.refine_iters > 0 && !best_v.is_zero()) {
    Real a = best_index == 0 && closed ? lo : best_s - step;
    Real b = best_index == n - 1 && closed ? hi : best_s + step;
    if (a < lo) a = lo;
    if (b > hi && closed) b = hi;
    const Real inv_phi = (sqrt(Real(5, p)) - 1L) / 2L;
    const Real floor_width = ldexp(Real(1, p), -static_cast<long>(p.bits()) + 8);

    auto eval = [&](const Real& s) {
      Complex z = point(s);
      Real v = abs(f(z));
      if (v > best_v) {
        best_v = v;
        best_s = s;
        best_z = std::move(z);
      }
      return v;
    };

    Real c = b - inv_phi * (b - a);
    Real d = a + inv_phi * (b - a);
    Real fc = eval(c);
    Real fd = eval(d);
    while (iterations < options.refine_iters) {
      if (b - a <= floor_width * max(Real(1, p), abs(b))) break;
      ++iterations;
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - inv_phi * (b - a);
        fc = eval(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + inv_phi * (b - a);
        fd = eval(d);
      }
    }
  }
  return {std::move(best_v), std::move(best_z), n, iterations};
}

Symmetry symmetry_of(const Measure& m) {
  return is_symmetric(m) ? Symmetry::conjugate_even : Symmetry::conjugate;
}

AnalyticFn error_fn(const Measure& m) {
  return [&m](const Complex& z) { return b_error(m, z); };
}

Real log_or_throw(const Real& x) {
  require(x.sign() > 0, "logarithm of a nonpositive supremum");
  return log(x);
}

}  // namespace

DiskErrorReport sup_on_circle(const AnalyticFn& f, const Real& r, Symmetry symmetry,
                              const ScanOptions& options) {
  require(r.sign() > 0, "sup_on_circle needs r > 0");
  require(options.n_samples >= 64, "sup_on_circle needs at least 64 samples");
  const Precision p = r.precision();
  const Real lo(p);
  Real hi = pi(p);
  bool closed = true;
  switch (symmetry) {
    case Symmetry::none:
      hi = ldexp(hi, 1);
      closed = false;
      break;
    case Symmetry::conjugate:
      break;
    case Symmetry::conjugate_even:
      hi = ldexp(hi, -1);
      break;
  }
  auto point = [&r](const Real& theta) { return polar(r, theta); };
  ScanResult res = scan_and_refine(f, point, lo, hi, closed, options);
  return {r, std::move(res.value), std::move(res.point), res.samples, res.iterations};
}

DiskErrorReport sup_on_circle(const Measure& m, const Real& r, const ScanOptions& options) {
  return sup_on_circle(error_fn(m), r, symmetry_of(m), options);
}

std::vector<DiskErrorReport> m_profile(const Measure& m, std::span<const Real> radii,
                                       const ScanOptions& options, std::optional<Real> support) {
  for (std::size_t i = 0; i < radii.size(); ++i) {
    require(radii[i].sign() > 0, "m_profile radii must be positive");
    require(i == 0 || radii[i - 1] <= radii[i], "m_profile radii must be sorted");
  }
  if (!support) support = support_bound(m);

  std::vector<DiskErrorReport> out;
  out.reserve(radii.size());
  for (const auto& r : radii) {
    DiskErrorReport report = sup_on_circle(m, r, options);
    if (support && *support >= 1 && r >= *support * 3L) {
      const Real a = support->rounded(r.precision());
      const Real gauss = exp(ldexp(r * r, -1));
      const Real lower = ldexp(gauss, -1);
      const Real upper = exp(a * r) + gauss;
      if (report.sup_value < lower || report.sup_value > upper) {
        fail(ErrorKind::invariant_violation,
             "M(r) envelope violated at r=" + r.to_decimal(12) + ": M=" +
                 report.sup_value.to_decimal(12) + " not in [" + lower.to_decimal(12) + ", " +
                 upper.to_decimal(12) + "]");
      }
    }
    out.push_back(std::move(report));
  }
  return out;
}

ThreeCirclesReport three_circles_check(const Measure& m, const Real& r1, const Real& r2,
                                       const Real& r3, const ScanOptions& options) {
  require(r1.sign() > 0 && r1 < r2 && r2 < r3, "three_circles_check needs 0 < r1 < r2 < r3");
  ScanOptions opts = options;
  for (int attempt = 0;; ++attempt) {
    const Real m1 = sup_on_circle(m, r1, opts).sup_value;
    require(m1.sign() > 0, "three_circles_check needs M(r1) > 0");
    const Real l1 = log(m1);
    const Real l2 = log_or_throw(sup_on_circle(m, r2, opts).sup_value);
    const Real l3 = log_or_throw(sup_on_circle(m, r3, opts).sup_value);
    const Real lambda = (log(r2) - log(r1)) / (log(r3) - log(r1));
    Real rhs = (Real(1, lambda.precision()) - lambda) * l1 + lambda * l3;
    const Real slack = max(Real(1, l1.precision()), abs(l3 - l1)) * Real(1e-6, l1.precision());
    ThreeCirclesReport report{{r1, r2, r3}, {l1, l2, l3}, lambda, l2, std::move(rhs), slack,
                              opts.n_samples};
    if (report.lhs <= report.rhs + report.slack) return report;
    if (attempt == 1) {
      fail(ErrorKind::invariant_violation,
           "three-circles inequality violated: log M(r2)=" + report.lhs.to_decimal(15) +
               " > " + report.rhs.to_decimal(15) + " + slack");
    }
    opts.n_samples *= 4;
  }
}

LineErrorReport sup_on_line(const Measure& m, const Real& r, const Real& a, const ScanOptions& options) {
  require(r.sign() >= 0, "sup_on_line needs r >= 0");
  require(a.sign() >= 0, "sup_on_line needs a >= 0");
  require(options.n_samples >= 64, "sup_on_line needs at least 64 samples");
  if (const auto bound = support_bound(m)) {
    require(*bound <= a * (Real(1, a.precision()) + ldexp(Real(1, a.precision()), -40)),
            "measure is not supported in [-a, a]");
  }
  const Precision p = max(r.precision(), a.precision());
  const Real rp = r.rounded(p);
  const Real ap = a.rounded(p);
  // (r^2 - Y^2)/2 = -ar - 32 ln 2: the off-segment Gaussian part is 2^-32 e^{-ar}.
  const Real height = sqrt(rp * rp + ldexp(ap * rp, 1) + ln2(p) * 64L);
  const Real tail = exp(ap * rp) + exp(ldexp(rp * rp - height * height, -1));

  auto point = [&rp](const Real& y) { return Complex(rp, y); };
  ScanResult res = scan_and_refine(error_fn(m), point, Real(p), height, true, options);
  return {rp, height, std::move(res.value), std::move(res.point), tail, res.samples, res.iterations};
}

ThreeLinesReport three_lines_check(const Measure& m, const Real& a, const ScanOptions& options) {
  require(a >= 1, "three_lines_check needs a >= 1");
  ScanOptions opts = options;
  const Precision p = a.precision();
  for (int attempt = 0;; ++attempt) {
    std::array<LineErrorReport, 3> lines{sup_on_line(m, Real(p), a, opts),
                                         sup_on_line(m, a * 3L, a, opts),
                                         sup_on_line(m, a * 6L, a, opts)};
    const bool degenerate = lines[0].sup_value.is_zero() || lines[1].sup_value.is_zero() ||
                            lines[2].sup_value.is_zero();
    if (degenerate) {
      return {a, std::move(lines), Real(p), Real(p), Real(p), CheckStatus::degenerate};
    }
    const Real l0 = log(lines[0].sup_value);
    Real l3 = log(lines[1].sup_value);
    const Real l6 = log(lines[2].sup_value);
    Real rhs = ldexp(l0 + l6, -1);
    Real slack = max(Real(1, p), abs(l6 - l0)) * Real(1e-6, p);
    if (l3 <= rhs + slack) {
      return {a, std::move(lines), std::move(l3), std::move(rhs), std::move(slack), CheckStatus::holds};
    }
    if (attempt == 1) {
      fail(ErrorKind::invariant_violation,
           "three-lines inequality violated: log b(3a)=" + l3.to_decimal(15) + " > " +
               rhs.to_decimal(15) + " + slack");
    }
    opts.n_samples *= 4;
  }
}

std::vector<Complex> taylor_coeffs(const AnalyticFn& g, const Real& rho, std::size_t n_max) {
  require(rho.sign() > 0, "taylor_coeffs needs rho > 0");
  const Precision p = rho.precision();
  const Real two_pi = ldexp(pi(p), 1);
  const Real slack = Real(1, p) + ldexp(Real(1, p), -static_cast<long>(p.bits() / 2));
  std::size_t n_points = std::max<std::size_t>(256, 8 * n_max);

  for (int attempt = 0; attempt <= 3; ++attempt, n_points *= 2) {
    const long big_n = static_cast<long>(n_points);
    std::vector<Complex> samples;
    std::vector<Complex> twiddles;
    samples.reserve(n_points);
    twiddles.reserve(n_points);
    Real peak(p);
    for (long j = 0; j < big_n; ++j) {
      const Real angle = two_pi * j / big_n;
      samples.push_back(g(polar(rho, angle)));
      peak = max(peak, abs(samples.back()));
      twiddles.push_back(polar(Real(1, p), -angle));
    }

    std::vector<Complex> coeffs;
    coeffs.reserve(n_max + 1);
    bool within = true;
    Real rho_pow(1, p);
    for (std::size_t n = 0; n <= n_max; ++n) {
      Complex acc(p);
      for (long j = 0; j < big_n; ++j) {
        const long idx = static_cast<long>((static_cast<unsigned long long>(j) * n) % n_points);
        acc += samples[j] * twiddles[idx];
      }
      acc /= rho_pow * big_n;
      if (abs(acc) > peak / rho_pow * slack) within = false;
      coeffs.push_back(std::move(acc));
      rho_pow *= rho;
    }
    if (within) return coeffs;
  }
  fail(ErrorKind::invariant_violation, "Cauchy bound violated by trapezoid Taylor coefficients");
}

std::vector<Complex> taylor_coeffs(const Measure& m, const Real& rho, std::size_t n_max) {
  auto g = [&m](const Complex& z) {
    Complex half = square(z);
    half.re() = ldexp(half.re(), -1);
    half.im() = ldexp(half.im(), -1);
    return laplace(m, z) * exp(-half);
  };
  return taylor_coeffs(g, rho, n_max);
}

std::string disk_report_csv_header() { return "radius,sup,witness_re,witness_im,samples,iters"; }

std::string to_csv_row(const DiskErrorReport& report, int digits) {
  std::ostringstream out;
  out << report.radius.to_decimal(digits) << ',' << report.sup_value.to_decimal(digits) << ','
      << report.witness.re().to_decimal(digits) << ',' << report.witness.im().to_decimal(digits)
      << ',' << report.samples_used << ',' << report.refine_iterations;
  return out.str();
}

}  // namespace gausdisk
