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

// Suprema of |B(z)| on circles and vertical lines, Hadamard convexity
// checks, and Cauchy-integral Taylor coefficients.
//
// Circle suprema rely on the maximum-modulus principle: the boundary scan
// of an entire function bounds it on the whole disk. Every reported sup is
// the best value actually evaluated, hence a lower bound on the true one.

#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gausdisk/measures.hpp"

namespace gausdisk {

using AnalyticFn = std::function<Complex(const Complex&)>;

enum class Symmetry {
  none,            // scan the full circle
  conjugate,       // f(conj z) = conj f(z): upper half suffices
  conjugate_even,  // additionally |f(-z)| = |f(z)|: first quadrant suffices
};

struct ScanOptions {
  std::size_t n_samples = 1024;
  // Golden-section steps after the grid pass; 80 takes the default grid's
  // bracket below 2^-64 in angle.
  std::size_t refine_iters = 80;
};

struct DiskErrorReport {
  Real radius;
  Real sup_value;
  Complex witness;
  std::size_t samples_used;
  std::size_t refine_iterations;
};

struct LineErrorReport {
  Real abscissa;
  Real halfheight;
  Real sup_value;
  Complex witness;
  // e^{ar} + e^{(r^2-Y^2)/2}: bounds |B| on the line outside the segment.
  Real tail_ceiling;
  std::size_t samples_used;
  std::size_t refine_iterations;
};

// Work happens at r's precision.
DiskErrorReport sup_on_circle(const AnalyticFn& f, const Real& r, Symmetry symmetry,
                              const ScanOptions& options = {});
// |b_error(m, .)| on |z| = r.
DiskErrorReport sup_on_circle(const Measure& m, const Real& r, const ScanOptions& options = {});

// One report per radius. For radii >= 3a with a >= 1 also asserts
// (1/2) e^{r^2/2} <= M(r) <= e^{ar} + e^{r^2/2}; `support` defaults to the
// measure's support bound.
std::vector<DiskErrorReport> m_profile(const Measure& m, std::span<const Real> radii,
                                       const ScanOptions& options = {},
                                       std::optional<Real> support = std::nullopt);

struct ThreeCirclesReport {
  std::array<Real, 3> radii;
  std::array<Real, 3> log_sup;
  Real lambda;
  Real lhs;    // log M(r2)
  Real rhs;    // (1-lambda) log M(r1) + lambda log M(r3)
  Real slack;
  std::size_t samples_used;
};

// Hadamard three-circles inequality on the scanned suprema. A violation
// beyond slack is retried once with 4x samples, then raised as
// invariant_violation.
ThreeCirclesReport three_circles_check(const Measure& m, const Real& r1, const Real& r2,
                                       const Real& r3, const ScanOptions& options = {});

LineErrorReport sup_on_line(const Measure& m, const Real& r, const Real& a,
                            const ScanOptions& options = {});

enum class CheckStatus { holds, degenerate };

struct ThreeLinesReport {
  Real a;
  std::array<LineErrorReport, 3> lines;  // r = 0, 3a, 6a
  Real lhs;  // log b(3a)
  Real rhs;  // (log b(0) + log b(6a)) / 2
  Real slack;
  CheckStatus status;
};

ThreeLinesReport three_lines_check(const Measure& m, const Real& a, const ScanOptions& options = {});

// c_n of g around 0 from the N-point trapezoid rule on |z| = rho,
// N = max(256, 8 n_max).
std::vector<Complex> taylor_coeffs(const AnalyticFn& g, const Real& rho, std::size_t n_max);
// g(z) = laplace(m, z) e^{-z^2/2}
std::vector<Complex> taylor_coeffs(const Measure& m, const Real& rho, std::size_t n_max);

std::string disk_report_csv_header();
std::string to_csv_row(const DiskErrorReport& report, int digits = 40);

}  // namespace gausdisk
