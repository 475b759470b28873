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

// Gaussian location mixture obtained by exponentially tilting the weights
// of a Gauss-Hermite rule, and its derivative-flatness certificate.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gausdisk/disk.hpp"
#include "gausdisk/hermite.hpp"
#include "gausdisk/measures.hpp"

namespace gausdisk {

// Atoms x_m with weights w_m = w~_m e^{x_m^2/2} / B_tilt, where w~ are the
// source weights and B_tilt = sum_m w~_m e^{x_m^2/2} >= 1.
struct SuperflatMixture {
  std::vector<Atom> atoms;
  Real b_tilt;
  DiscreteMeasure source;
  Real a;
};

// Tilts an arbitrary discrete source; `a` bounds its support.
SuperflatMixture tilt(const DiscreteMeasure& source, const Real& a);

// Source = Gauss-Hermite rule sized for [-a, a], a >= 4. Precision follows a.
SuperflatMixture build_superflat(const Real& a, RuleSizing sizing = RuleSizing::standard);

// (1/sqrt(2 pi)) sum_m w_m e^{-(z-x_m)^2/2}
Complex mixture_density(const SuperflatMixture& m, const Complex& z);
// n-th complex derivative of mixture_density.
Complex mixture_derivative(const SuperflatMixture& m, unsigned n, const Complex& z);
// laplace(source, z) e^{-z^2/2} - B_tilt sqrt(2 pi) mixture_density(z)
Complex tilt_identity_residual(const SuperflatMixture& m, const Complex& z);

struct FlatnessBounds {
  Real eps2;  // sup_{|z|<=2} |L(z) e^{-z^2/2} - 1|
  Complex eps2_witness;
  // (n, n! eps2): Cauchy estimate across the radius gap 2 -> 1.
  std::vector<std::pair<unsigned, Real>> deriv_bounds;
};

// Works for any measure; N(0,1) gives eps2 = 0. Precision follows `p`.
FlatnessBounds flatness_bounds(const Measure& source, Precision p, unsigned n_max = 8,
                               const ScanOptions& options = {});

struct FlatnessCertificate {
  Real a;
  Real b_tilt;
  Real eps2;
  std::vector<std::pair<unsigned, Real>> deriv_bounds;
  // (n, sup_{|z|<=1} |f^{(n)}(z)|) for n = 1..4 from boundary scans.
  std::vector<std::pair<unsigned, Real>> direct_sups;
};

// Asserts direct_sups[n] sqrt(2 pi) B_tilt <= n! eps2 (1 + 1e-3). A failure
// is retried with 4x samples and then raised as invariant_violation.
FlatnessCertificate flatness_certificate(const SuperflatMixture& m, const ScanOptions& options = {});

// `x_m,w_m` rows preceded by `# a=`, `# k=`, `# B_tilt=` comment lines.
std::string to_csv(const SuperflatMixture& m, int digits = 0);

}  // namespace gausdisk
