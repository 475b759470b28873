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

// Truncation versus quadrature comparison on a disk, rate fits and the
// explicit Taylor-tail bound chain.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gausdisk/disk.hpp"
#include "gausdisk/hermite.hpp"

namespace gausdisk {

struct RateRow {
  Real a;
  unsigned k;
  Real err_trunc;
  Real err_quad;
  std::optional<Real> tail_bound;  // 3 (c1 b/a)^{a^2/4}, only when a > 2 c1 b
  Precision precision;
};

struct RateTable {
  std::vector<RateRow> rows;  // sorted by a
  Real b;
  ScanOptions scan;
  RuleSizing sizing;
  unsigned extra_bits;
  std::optional<Real> c1_fit;
};

// Row precision is precision_policy(a, b) + extra_bits.
RateTable run_figure(std::span<const double> a_grid, double b = 1.0,
                     RuleSizing sizing = RuleSizing::standard, const ScanOptions& scan = {},
                     unsigned extra_bits = 0);

// Smallest c >= e/2 with 3 (c b/a)^{a^2/4} >= err_quad on every row.
Real fit_c1(const RateTable& table);
// Sets c1_fit and fills tail_bound on rows with a > 2 c1 b.
void attach_tail_bounds(RateTable& table);

// Least-squares slope of ln err_trunc against a^2 over rows with a >= 4.
double fit_truncation_rate(const RateTable& table);
// Least-squares slope of ln err_quad against a^2 ln a over rows with a >= 6.
double fit_quadrature_rate(const RateTable& table);

enum class TailStatus {
  holds,
  regime_not_met,       // c1 b/a >= 1/2
  sum_diverges,         // ea b/(2k) >= 1 or e b/sqrt(2k) >= 1
  err_exceeds_sum,
  sum_exceeds_bound,    // explicit sum > 3 (c1 b/a)^{a^2/4}
};

struct TailChainReport {
  Real a;
  Real b;
  unsigned k;
  Real c1;
  Real c1_proof;  // max(e a^2/(2k), e a/sqrt(2k)): smallest c1 the last step admits
  Real err_quad;
  Real tight_sum;              // sum_{l>=k} ((ea/2l)^{2l} + (e/sqrt(2l))^{2l}) b^{2l}
  std::optional<Real> k_sum;   // same with l replaced by k inside the brackets
  Real bound;                  // 3 (c1 b/a)^{a^2/4}
  TailStatus status;
};

// err_quad <= tight_sum always holds; breaking it raises invariant_violation.
// The later links depend on c1 and are reported through `status`.
TailChainReport tail_chain(const Real& a, unsigned k, const Real& b, const Real& c1,
                           const Real& err_quad);
// Builds the rule for `sizing` and measures err_quad on |z| = b.
TailChainReport validate_tail_bound(const Real& a, const Real& b, const Real& c1,
                                    RuleSizing sizing = RuleSizing::standard,
                                    const ScanOptions& scan = {});
// Any measure in place of the rule; err is its sup on |z| = b.
TailChainReport validate_tail_bound(const Measure& m, const Real& a, unsigned k, const Real& b,
                                    const Real& c1, const ScanOptions& scan = {});

std::string to_string(TailStatus status);

enum class FigureFormat { csv, svg };

// Columns a,k,log10_err_trunc,log10_err_quad,log10_tail_bound.
std::string figure_csv(const RateTable& table);
std::string figure_svg(const RateTable& table);
// JSON with grid, precisions, scan settings, c1_fit and full-precision rows.
std::string run_manifest(const RateTable& table, int digits = 0);
// Rejects an empty table; raises io_failure when the file cannot be written.
void emit_figure(const RateTable& table, FigureFormat format, const std::string& path);

}  // namespace gausdisk
