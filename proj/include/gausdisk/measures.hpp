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

// Candidate approximants of N(0,1) and their Laplace and characteristic
// transforms.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gausdisk/hermite.hpp"
#include "gausdisk/hp.hpp"

namespace gausdisk {

struct Atom {
  Real location;
  Real mass;
};

// Finitely many atoms with nonnegative masses summing to one, sorted by
// location.
class DiscreteMeasure {
 public:
  DiscreteMeasure(std::vector<Atom> atoms, Precision p);

  static DiscreteMeasure from_rule(const QuadratureRule& rule);
  static DiscreteMeasure point_mass(const Real& location);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  Precision precision() const noexcept { return precision_; }
  Real support_bound() const;
  bool symmetric() const;

 private:
  std::vector<Atom> atoms_;
  Precision precision_;
};

// N(0,1) conditioned on [-a, a], a >= 1.
class TruncatedGaussian {
 public:
  explicit TruncatedGaussian(Real a);

  const Real& a() const noexcept { return a_; }
  Precision precision() const noexcept { return a_.precision(); }

 private:
  Real a_;
};

// N(0,1) itself; its Laplace transform is exactly e^{z^2/2}.
struct StdGaussianRef {};

using Measure = std::variant<DiscreteMeasure, TruncatedGaussian, StdGaussianRef>;

// Even and real: the transform satisfies L(-z) = L(z) and L(conj z) = conj L(z).
bool is_symmetric(const Measure& m);
// Half-width of the support; empty for N(0,1).
std::optional<Real> support_bound(const Measure& m);
std::string describe(const Measure& m);

// Normal CDF continued to the complex plane through its entire Taylor
// series. Absolute error at most 2^-p * max(1, |phi(z)|). Requires |z| <= 64.
Complex phi_cdf(const Complex& z, Precision p);

// P[N(0,1) > a] with relative accuracy at a's precision.
Real q_tail(const Real& a);

// The transform runs at the larger of the measure's and z's precisions.
Complex laplace(const Measure& m, const Complex& z);
Complex char_fn(const Measure& m, const Real& t);
// L_m(z) - e^{z^2/2}
Complex b_error(const Measure& m, const Complex& z);

struct CfBoundReport {
  Real a;
  Real grid_max;     // max_t |Psi(t) - e^{-t^2/2}| over the grid
  Real argmax_t;
  Real tv_ceiling;   // 4 Q(a)
  Real gauss_ceiling;  // 2 e^{-a^2/2}
  std::size_t grid_size;
  std::size_t evaluations;  // distinct |t| values evaluated
};

// Checks grid_max <= 4Q(a) <= 2e^{-a^2/2} for the truncated Gaussian. The
// supremum over all of R is only certified through the ceiling chain, not by
// the grid. Throws invariant_violation if the chain breaks.
CfBoundReport cf_bound_check(const Real& a, std::span<const Real> t_grid);

// `location,mass` rows, header row included.
std::string to_csv(const DiscreteMeasure& m, int digits = 0);
DiscreteMeasure discrete_from_csv(std::string_view text, Precision p);
// `truncated a=<serialized real>`; plain decimals are read at `fallback`.
std::string to_text(const TruncatedGaussian& m);
TruncatedGaussian truncated_from_text(std::string_view text, Precision fallback);

}  // namespace gausdisk
