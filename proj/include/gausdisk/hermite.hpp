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

// Probabilists' Hermite polynomials and the k-point Gauss-Hermite rule for
// the standard normal law.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gausdisk/hp.hpp"

namespace gausdisk {

// (He_n(x), He_{n-1}(x)) by the three-term recurrence, He_{-1} = 0.
std::pair<Real, Real> hermite_pair(unsigned n, const Real& x);
// Same recurrence for complex arguments.
std::pair<Complex, Complex> hermite_pair(unsigned n, const Complex& x);

// Atoms of the Gauss-Hermite rule: nodes ascending, symmetric about zero,
// positive weights summing to one. Matches the N(0,1) moments of order
// < 2k.
class QuadratureRule {
 public:
  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<Real>& nodes() const noexcept { return nodes_; }
  const std::vector<Real>& weights() const noexcept { return weights_; }
  Precision precision() const noexcept { return precision_; }
  const Real& max_node() const { return nodes_.back(); }

 private:
  friend QuadratureRule build_rule(unsigned k, Precision p);
  QuadratureRule(std::vector<Real> nodes, std::vector<Real> weights, Precision p)
      : nodes_(std::move(nodes)), weights_(std::move(weights)), precision_(p) {}

  std::vector<Real> nodes_;
  std::vector<Real> weights_;
  Precision precision_;
};

// Throws convergence_failure if Newton refinement stalls.
QuadratureRule build_rule(unsigned k, Precision p);

// sum_m w_m x_m^i
Real moment(const QuadratureRule& rule, unsigned i);

// Largest root of He_k, refined at p.
Real largest_node(unsigned k, Precision p);

// ceil(a^2/8). Requires a >= 2; throws support_violation when
// sqrt(4k+2) > a.
unsigned k_for_support(const Real& a);

// Largest k whose Gauss-Hermite nodes all lie in [-a, a].
unsigned widest_k_for_support(const Real& a);

enum class RuleSizing {
  standard,  // k = ceil(a^2/8)
  widest,   // densest rule still supported on [-a, a]
};

const char* to_string(RuleSizing sizing) noexcept;
unsigned rule_size(const Real& a, RuleSizing sizing);

// `node,weight` with a header row. digits <= 0 prints every digit.
std::string rule_csv(const QuadratureRule& rule, int digits = 0);

}  // namespace gausdisk
