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

#include "gausdisk/hermite.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gausdisk {

namespace {

template <typename T>
std::pair<T, T> hermite_recurrence(unsigned n, const T& x, Precision p) {
  T prev(Real(0, p));
  T cur(Real(1, p));
  for (unsigned m = 0; m < n; ++m) {
    // He_{m+1} = x He_m - m He_{m-1}
    T next = x * cur;
    if (m > 0) next -= prev * Real(static_cast<long>(m), p);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {std::move(cur), std::move(prev)};
}

// Eigenvalues of the Jacobi matrix for N(0,1): zero diagonal, sqrt(i) off it.
std::vector<double> jacobi_eigenvalues(unsigned k) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(k);
  Eigen::VectorXd sub(k > 1 ? k - 1 : 0);
  for (unsigned i = 1; i < k; ++i) sub(i - 1) = std::sqrt(static_cast<double>(i));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + k);
  std::sort(out.begin(), out.end());
  return out;
}

Real newton_root(unsigned k, double guess, Precision p) {
  const Precision wp = p.plus(32);
  Real x(guess, wp);
  const Real tol = ldexp(Real(1, wp), -static_cast<long>(p.bits() + 16));
  const unsigned long cap = 4 * p.bits();
  for (unsigned long it = 0; it < cap; ++it) {
    auto [hk, hk1] = hermite_pair(k, x);
    Real step = hk / (hk1 * static_cast<long>(k));
    x -= step;
    if (abs(step) <= tol * max(Real(1, wp), abs(x))) {
      auto [hk2, hk12] = hermite_pair(k, x);
      x -= hk2 / (hk12 * static_cast<long>(k));
      return x;
    }
  }
  fail(ErrorKind::convergence_failure,
       "Newton refinement of He_" + std::to_string(k) + " root did not converge");
}

}  // namespace

std::pair<Real, Real> hermite_pair(unsigned n, const Real& x) {
  return hermite_recurrence(n, x, x.precision());
}

std::pair<Complex, Complex> hermite_pair(unsigned n, const Complex& x) {
  return hermite_recurrence(n, x, x.precision());
}

QuadratureRule build_rule(unsigned k, Precision p) {
  require(k >= 1, "quadrature rule needs k >= 1");
  if (k == 1) return QuadratureRule({Real(p)}, {Real(1, p)}, p);

  const std::vector<double> guesses = jacobi_eigenvalues(k);
  const Precision wp = p.plus(32);
  const unsigned half = k / 2;
  const Real kfac = factorial(k - 1, wp);

  // Nonnegative half only; index j is the j-th smallest positive root.
  std::vector<Real> pos_nodes;
  std::vector<Real> pos_weights;
  for (unsigned j = k - half; j < k; ++j) {
    Real x = newton_root(k, guesses[j], p);
    const Real h = hermite_pair(k - 1, x).first;
    pos_weights.push_back(kfac / (h * h * static_cast<long>(k)));
    pos_nodes.push_back(std::move(x));
  }
  Real center_weight(wp);
  if (k % 2 == 1) {
    const Real h = hermite_pair(k - 1, Real(wp)).first;
    center_weight = kfac / (h * h * static_cast<long>(k));
  }

  Real total = center_weight;
  for (const auto& w : pos_weights) total += ldexp(w, 1);

  std::vector<Real> nodes;
  std::vector<Real> weights;
  nodes.reserve(k);
  weights.reserve(k);
  for (std::size_t j = pos_nodes.size(); j-- > 0;) {
    nodes.push_back((-pos_nodes[j]).rounded(p));
    weights.push_back((pos_weights[j] / total).rounded(p));
  }
  if (k % 2 == 1) {
    nodes.emplace_back(p);
    weights.push_back((center_weight / total).rounded(p));
  }
  for (std::size_t j = 0; j < pos_nodes.size(); ++j) {
    nodes.push_back(pos_nodes[j].rounded(p));
    weights.push_back((pos_weights[j] / total).rounded(p));
  }
  return QuadratureRule(std::move(nodes), std::move(weights), p);
}

Real moment(const QuadratureRule& rule, unsigned i) {
  Real sum(rule.precision());
  for (std::size_t m = 0; m < rule.size(); ++m) {
    sum += rule.weights()[m] * pow(rule.nodes()[m], static_cast<long>(i));
  }
  return sum;
}

Real largest_node(unsigned k, Precision p) {
  require(k >= 1, "largest_node needs k >= 1");
  if (k == 1) return Real(p);
  return newton_root(k, jacobi_eigenvalues(k).back(), p).rounded(p);
}

unsigned k_for_support(const Real& a) {
  require(a >= 2, "k_for_support needs a >= 2");
  const Real k_real = ceil(a * a / 8L);
  const long k = to_long(k_real);
  const Real reach = sqrt(Real(4 * k + 2, a.precision()));
  if (reach > a) {
    fail(ErrorKind::support_violation,
         "sqrt(4k+2) = " + reach.to_decimal(12) + " exceeds a = " + a.to_decimal(12) +
             " for k = " + std::to_string(k));
  }
  return static_cast<unsigned>(k);
}

unsigned widest_k_for_support(const Real& a) {
  require(a >= 0, "widest_k_for_support needs a >= 0");
  const double limit = a.to_double();
  unsigned k = 1;
  while (jacobi_eigenvalues(k + 1).back() <= limit) ++k;
  const Precision p = max(a.precision(), Precision(128));
  while (largest_node(k + 1, p) <= a) ++k;
  while (k > 1 && largest_node(k, p) > a) --k;
  return k;
}

const char* to_string(RuleSizing sizing) noexcept {
  return sizing == RuleSizing::standard ? "standard" : "widest";
}

unsigned rule_size(const Real& a, RuleSizing sizing) {
  return sizing == RuleSizing::standard ? k_for_support(a) : widest_k_for_support(a);
}

std::string rule_csv(const QuadratureRule& rule, int digits) {
  std::ostringstream out;
  out << "node,weight\n";
  for (std::size_t i = 0; i < rule.size(); ++i) {
    out << rule.nodes()[i].to_decimal(digits) << ','
        << rule.weights()[i].to_decimal(digits) << '\n';
  }
  return out.str();
}

}  // namespace gausdisk
