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

#include "gausdisk/superflat.hpp"

#include <sstream>

namespace gausdisk {

namespace {

Complex half_square(const Complex& z) {
  Complex out = square(z);
  out.re() = ldexp(out.re(), -1);
  out.im() = ldexp(out.im(), -1);
  return out;
}

Real inv_sqrt_two_pi(Precision p) { return Real(1, p) / sqrt(ldexp(pi(p), 1)); }

}  // namespace

SuperflatMixture tilt(const DiscreteMeasure& source, const Real& a) {
  const Precision p = source.precision();
  require(source.support_bound() <= a * (Real(1, p) + ldexp(Real(1, p), -40)),
          "tilt source must be supported in [-a, a]");
  std::vector<Real> tilted;
  tilted.reserve(source.atoms().size());
  Real b_tilt(p);
  for (const auto& atom : source.atoms()) {
    tilted.push_back(atom.mass * exp(ldexp(atom.location * atom.location, -1)));
    b_tilt += tilted.back();
  }
  std::vector<Atom> atoms;
  atoms.reserve(tilted.size());
  for (std::size_t i = 0; i < tilted.size(); ++i) {
    atoms.push_back({source.atoms()[i].location, tilted[i] / b_tilt});
  }
  return {std::move(atoms), std::move(b_tilt), source, a};
}

SuperflatMixture build_superflat(const Real& a, RuleSizing sizing) {
  require(a >= 4, "build_superflat needs a >= 4");
  const unsigned k = rule_size(a, sizing);
  return tilt(DiscreteMeasure::from_rule(build_rule(k, a.precision())), a);
}

Complex mixture_density(const SuperflatMixture& m, const Complex& z) {
  return mixture_derivative(m, 0, z);
}

Complex mixture_derivative(const SuperflatMixture& m, unsigned n, const Complex& z) {
  // d^n/dz^n e^{-u^2/2} = (-1)^n He_n(u) e^{-u^2/2}
  const Precision p = max(m.b_tilt.precision(), z.precision());
  const Complex zp = z.rounded(p);
  Complex sum(p);
  for (const auto& atom : m.atoms) {
    const Complex u = zp - atom.location;
    Complex term = exp(-half_square(u)) * atom.mass;
    if (n > 0) term *= hermite_pair(n, u).first;
    sum += term;
  }
  if (n % 2 == 1) sum = -sum;
  return sum * inv_sqrt_two_pi(p);
}

Complex tilt_identity_residual(const SuperflatMixture& m, const Complex& z) {
  const Precision p = max(m.b_tilt.precision(), z.precision());
  const Complex zp = z.rounded(p);
  const Complex lhs = laplace(Measure(m.source), zp) * exp(-half_square(zp));
  const Complex rhs = mixture_density(m, zp) * (m.b_tilt * sqrt(ldexp(pi(p), 1)));
  return lhs - rhs;
}

FlatnessBounds flatness_bounds(const Measure& source, Precision p, unsigned n_max,
                               const ScanOptions& options) {
  // L(z) e^{-z^2/2} - 1 = B(z) e^{-z^2/2}
  auto g_minus_one = [&source](const Complex& z) { return b_error(source, z) * exp(-half_square(z)); };
  const Symmetry symmetry = is_symmetric(source) ? Symmetry::conjugate_even : Symmetry::conjugate;
  DiskErrorReport scan = sup_on_circle(g_minus_one, Real(2, p), symmetry, options);

  std::vector<std::pair<unsigned, Real>> bounds;
  for (unsigned n = 1; n <= n_max; ++n) bounds.emplace_back(n, factorial(n, p) * scan.sup_value);
  return {std::move(scan.sup_value), std::move(scan.witness), std::move(bounds)};
}

FlatnessCertificate flatness_certificate(const SuperflatMixture& m, const ScanOptions& options) {
  const Precision p = m.b_tilt.precision();
  const Real scale = sqrt(ldexp(pi(p), 1)) * m.b_tilt;
  const Real tolerance(1.001, p);
  const bool symmetric = m.source.symmetric();
  ScanOptions opts = options;

  for (int attempt = 0;; ++attempt) {
    FlatnessBounds bounds = flatness_bounds(Measure(m.source), p, 8, opts);
    std::vector<std::pair<unsigned, Real>> direct;
    bool ok = true;
    std::string detail;
    for (unsigned n = 1; n <= 4; ++n) {
      auto deriv = [&m, n](const Complex& z) { return mixture_derivative(m, n, z); };
      const Real sup =
          sup_on_circle(deriv, Real(1, p), symmetric ? Symmetry::conjugate_even : Symmetry::conjugate, opts)
              .sup_value;
      if (sup * scale > bounds.deriv_bounds[n - 1].second * tolerance) {
        ok = false;
        detail = "n=" + std::to_string(n) + " direct " + (sup * scale).to_decimal(12) + " > bound " +
                 bounds.deriv_bounds[n - 1].second.to_decimal(12);
      }
      direct.emplace_back(n, sup);
    }
    if (ok) {
      return {m.a, m.b_tilt, std::move(bounds.eps2), std::move(bounds.deriv_bounds), std::move(direct)};
    }
    if (attempt == 1) fail(ErrorKind::invariant_violation, "flatness certificate violated: " + detail);
    opts.n_samples *= 4;
  }
}

std::string to_csv(const SuperflatMixture& m, int digits) {
  std::ostringstream out;
  out << "# a=" << m.a.to_decimal(digits) << '\n';
  out << "# k=" << m.atoms.size() << '\n';
  out << "# B_tilt=" << m.b_tilt.to_decimal(digits) << '\n';
  out << "x_m,w_m\n";
  for (const auto& atom : m.atoms) {
    out << atom.location.to_decimal(digits) << ',' << atom.mass.to_decimal(digits) << '\n';
  }
  return out.str();
}

}  // namespace gausdisk
