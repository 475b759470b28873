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

#include <doctest.h>

#include <random>

#include "gausdisk/superflat.hpp"

using namespace gausdisk;

TEST_SUITE("superflat") {

TEST_CASE("point mass at zero tilts to itself") {
  const Precision p(128);
  const SuperflatMixture m = tilt(DiscreteMeasure::point_mass(Real(p)), Real(1, p));
  CHECK(m.b_tilt == Real(1, p));
  REQUIRE(m.atoms.size() == 1);
  CHECK(m.atoms[0].mass == Real(1, p));
  // density is exactly the N(0,1) density
  const Complex z(0.4, 0.2, p);
  const Complex want = exp(-square(z) / Real(2, p)) / sqrt(ldexp(pi(p), 1));
  CHECK(abs(mixture_density(m, z) - want) <= ldexp(Real(1, p), -120));
  CHECK_THROWS_AS(tilt(DiscreteMeasure::point_mass(Real(3, p)), Real(1, p)), Error);
}

TEST_CASE("tilt identity holds at random points") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1, 1);
  for (double a : {4.0, 6.0, 8.0}) {
    for (RuleSizing sizing : {RuleSizing::standard, RuleSizing::widest}) {
      const Precision p = precision_policy(a, 2);
      const SuperflatMixture m = build_superflat(Real(a, p), sizing);
      CHECK(m.b_tilt >= 1);
      Real total(p);
      for (const auto& atom : m.atoms) total += atom.mass;
      CHECK(abs(total - Real(1, p)) <= ldexp(Real(1, p), -static_cast<long>(p.bits()) + 16));
      for (int i = 0; i < 10; ++i) {
        const Complex z(2 * u(rng), 2 * u(rng), p);
        const Real scale = max(Real(1, p), abs(mixture_density(m, z)) * m.b_tilt * Real(3, p));
        CHECK(abs(tilt_identity_residual(m, z)) <= ldexp(scale, -static_cast<long>(p.bits()) + 24));
      }
    }
  }
  CHECK_THROWS_AS(build_superflat(Real(3.5, Precision(128))), Error);
}

TEST_CASE("derivatives agree with finite differences") {
  const Precision p(256);
  const SuperflatMixture m = build_superflat(Real(5, p));
  const Complex z(0.3, -0.45, p);
  const Real h = ldexp(Real(1, p), -60);
  for (unsigned n = 0; n < 4; ++n) {
    const Complex fd = (mixture_derivative(m, n, z + Complex(h)) - mixture_derivative(m, n, z - Complex(h))) /
                       ldexp(h, 1);
    const Complex d = mixture_derivative(m, n + 1, z);
    CHECK(abs(fd - d) <= ldexp(max(Real(1, p), abs(d)), -100));
  }
}

TEST_CASE("flatness bounds") {
  const Precision p(128);
  const FlatnessBounds g = flatness_bounds(Measure(StdGaussianRef{}), p);
  CHECK(g.eps2.is_zero());
  const FlatnessBounds d = flatness_bounds(Measure(DiscreteMeasure::point_mass(Real(p))), p, 3);
  // |e^{-z^2/2} - 1| on |z| = 2 peaks at z = 2i: e^2 - 1
  CHECK(abs(d.eps2 - (exp(Real(2, p)) - Real(1, p))) <= ldexp(Real(1, p), -100));
  REQUIRE(d.deriv_bounds.size() == 3);
  CHECK(d.deriv_bounds[2].second == d.eps2 * Real(6, p));
}

TEST_CASE("certificate and eps2 decay under the widest rules") {
  Real prev(1, Precision(128));
  for (double a : {4.0, 6.0, 8.0}) {
    const Precision p = precision_policy(a, 2);
    const SuperflatMixture m = build_superflat(Real(a, p), RuleSizing::widest);
    const FlatnessCertificate c = flatness_certificate(m);
    CHECK(c.eps2 < prev);
    prev = c.eps2;
    if (a >= 6) CHECK(c.eps2 <= exp(Real(-a * a / 2, p)));
    REQUIRE(c.direct_sups.size() == 4);
    const Real scale = sqrt(ldexp(pi(p), 1)) * c.b_tilt;
    for (const auto& [n, sup] : c.direct_sups) {
      CHECK(sup * scale <= c.deriv_bounds[n - 1].second * Real(1.001, p));
    }
  }
}

TEST_CASE("mixture CSV") {
  const Precision p(128);
  const std::string csv = to_csv(build_superflat(Real(4, p)), 6);
  CHECK(csv.rfind("# a=4\n# k=2\n# B_tilt=", 0) == 0);
  CHECK(csv.find("x_m,w_m\n-1,0.5\n1,0.5\n") != std::string::npos);
}

}  // TEST_SUITE
