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

// Acceptance run: one PASS/FAIL line per criterion. Arguments select
// criteria by number; no arguments runs all of them. Exit status is nonzero
// when any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "gausdisk/experiments.hpp"
#include "gausdisk/superflat.hpp"
#include "oracles.hpp"

using namespace gausdisk;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::string violations;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      violations += " [violated: " + what + "]";
    }
  }
};

Real pow2(long e, Precision p) { return ldexp(Real(1, p), e); }

std::string sci(const Real& x, int digits = 4) { return x.to_decimal(digits); }

Outcome moments() {
  Outcome o;
  const Precision p(512);
  Real worst(p);
  for (unsigned k = 1; k <= 40; ++k) {
    const QuadratureRule rule = build_rule(k, p);
    for (unsigned i = 1; i <= 2 * k - 1; ++i) {
      const Real want = i % 2 ? Real(p) : double_factorial(static_cast<long>(i) - 1, p);
      const Real err = abs(moment(rule, i) - want);
      if (err > worst) worst = err;
      if (err > pow2(-256, p)) o.require(false, "k=" + std::to_string(k) + " i=" + std::to_string(i));
    }
  }
  o.detail << "k=1..40 at 512 bits, worst |m_i - E G^i| = " << sci(worst) << " (limit 2^-256)";
  return o;
}

Outcome containment() {
  Outcome o;
  const Precision p(256);
  Real worst_ratio(p);
  for (unsigned k = 1; k <= 40; ++k) {
    const Real limit = sqrt(Real(static_cast<long>(4 * k + 2), p));
    const Real node = build_rule(k, p).max_node();
    if (node / limit > worst_ratio) worst_ratio = node / limit;
    o.require(node <= limit, "k=" + std::to_string(k));
  }
  for (int a = 4; a <= 12; ++a) {
    const double k = std::ceil(a * a / 8.0);
    o.require(std::sqrt(4 * k + 2) <= a, "a=" + std::to_string(a));
  }
  o.detail << "max node / sqrt(4k+2) <= " << sci(worst_ratio, 6) << " for k<=40; sqrt(4ceil(a^2/8)+2) <= a on a=4..12";
  return o;
}

Outcome closed_forms() {
  Outcome o;
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> u(-5, 5);
  const Precision p(256);
  const Measure two(DiscreteMeasure::from_rule(build_rule(2, p)));
  Real worst(p);
  for (int i = 0; i < 100; ++i) {
    const Complex z(u(rng), u(rng), p);
    const Complex c = (exp(z) + exp(-z)) / Real(2, p);
    const Real err = abs(laplace(two, z) - c) / max(Real(1, p), abs(c));
    if (err > worst) worst = err;
  }
  o.require(worst <= pow2(-static_cast<long>(p.bits()) + 24, p), "cosh");
  o.detail << "k=2 vs cosh: worst " << sci(worst) << " (limit 2^-232);";

  std::uniform_real_distribution<double> ua(1, 6), uz(-3, 3);
  Real worst_t(1e-300, Precision(128)), limit_t(1, Precision(128));
  for (int i = 0; i < 20; ++i) {
    const double a = ua(rng);
    const Precision q = precision_policy(a, 3);
    const Real ar(a, q);
    const Complex z(uz(rng), uz(rng), q);
    const Complex want = oracle::truncated_laplace(ar, z, q);
    const Real err = abs(laplace(Measure(TruncatedGaussian(ar)), z) - want) / max(Real(1, q), abs(want));
    const Real limit = pow2(-static_cast<long>(q.bits() / 2), q);
    if (err / limit > worst_t / limit_t) {
      worst_t = err;
      limit_t = limit;
    }
    o.require(err <= limit, "truncated pair " + std::to_string(i));
  }
  o.detail << " truncated vs integration: worst " << sci(worst_t) << " against 2^-p/2 = " << sci(limit_t);
  return o;
}

std::vector<double> grid_of(double lo, double hi, double step) {
  std::vector<double> g;
  for (int i = 0; lo + i * step <= hi + 1e-9; ++i) g.push_back(lo + i * step);
  return g;
}

const RateTable& figure_table() {
  static const RateTable t = run_figure(grid_of(4, 10, 0.5), 1.0, RuleSizing::widest);
  return t;
}

Outcome figure() {
  Outcome o;
  const RateTable& t = figure_table();
  bool ordered = true, ratio_down = true;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    ordered = ordered && t.rows[i].err_quad < t.rows[i].err_trunc;
    if (i > 0) {
      ratio_down = ratio_down && t.rows[i].err_quad / t.rows[i].err_trunc <
                                     t.rows[i - 1].err_quad / t.rows[i - 1].err_trunc;
    }
  }
  o.require(ordered, "(i) err_quad < err_trunc");
  o.require(ratio_down, "(ii) ratio strictly decreasing");
  const double s_trunc = fit_truncation_rate(t);
  o.require(s_trunc >= -1.0 && s_trunc <= -0.25, "(iii) truncation slope");
  const RateTable wide = run_figure(grid_of(6, 12, 1), 1.0, RuleSizing::widest);
  const double s_quad = fit_quadrature_rate(wide);
  o.require(s_quad >= -0.6 && s_quad <= -0.1, "(iv) quadrature slope");
  o.detail << "widest rules, b=1: (i) " << (ordered ? "yes" : "no") << ", (ii) " << (ratio_down ? "yes" : "no")
           << ", (iii) slope " << s_trunc << " in [-1,-0.25], (iv) slope " << s_quad << " in [-0.6,-0.1]";

  // k = ceil(a^2/8) for comparison; not part of the verdict.
  const RateTable th = run_figure(grid_of(4, 10, 1), 1.0, RuleSizing::standard);
  int beats = 0;
  for (const auto& r : th.rows) beats += r.err_quad < r.err_trunc;
  o.detail << "; with k=ceil(a^2/8) quadrature wins on " << beats << "/" << th.rows.size() << " of a=4..10";
  return o;
}

Outcome tail() {
  Outcome o;
  const RateTable& t = figure_table();
  const Real& c1 = *t.c1_fit;
  int in_regime = 0, held = 0;
  std::ostringstream bad;
  Real max_proof(0, Precision(128));
  for (const auto& row : t.rows) {
    if (!(row.a >= ldexp(c1.rounded(row.precision) * t.b.rounded(row.precision), 1))) continue;
    ++in_regime;
    const TailChainReport r = tail_chain(row.a, row.k, t.b, c1, row.err_quad);
    if (r.c1_proof > max_proof) max_proof = r.c1_proof.rounded(Precision(128));
    if (r.status == TailStatus::holds) {
      ++held;
    } else {
      bad << " a=" << row.a.to_decimal(3) << ":" << to_string(r.status);
    }
  }
  o.require(held == in_regime, "chain" + bad.str());
  o.detail << "c1_fit=" << c1.to_decimal(6) << ", chain holds on " << held << "/" << in_regime
           << " rows in regime; c1 needed by the bracket step up to " << max_proof.to_decimal(4);
  return o;
}

Outcome hadamard() {
  Outcome o;
  for (int a : {4, 6, 8}) {
    const Precision p = precision_policy(a, 6 * a);
    const Real ar(a, p);
    const Measure m(DiscreteMeasure::from_rule(build_rule(k_for_support(ar), p)));
    const ThreeCirclesReport r = three_circles_check(m, Real(1, p), Real(3 * a, p), Real(5 * a, p));
    o.require(r.lhs <= r.rhs + r.slack, "three circles a=" + std::to_string(a));
    const std::vector<Real> radii{Real(3 * a, p), Real(4 * a, p), Real(5 * a, p)};
    m_profile(m, radii, {}, ar);
    o.detail << "circles a=" << a << " gap " << sci(r.rhs - r.lhs, 3) << "; ";
  }
  const Precision p = precision_policy(1, 6);
  const Measure delta(DiscreteMeasure::point_mass(Real(p)));
  const Measure two(DiscreteMeasure::from_rule(build_rule(2, p)));
  for (const auto* m : {&delta, &two}) {
    const ThreeLinesReport r = three_lines_check(*m, Real(1, p));
    o.require(r.status == CheckStatus::holds && r.lhs <= r.rhs + r.slack, "three lines");
    const std::vector<Real> radii{Real(3, p), Real(4.5, p), Real(6, p)};
    m_profile(*m, radii, {}, Real(1, p));
    o.detail << "lines " << (m == &delta ? "delta0" : "k=2") << " gap " << sci(r.rhs - r.lhs, 3) << "; ";
  }
  o.detail << "envelope checked at r = 3a..6a";
  return o;
}

Outcome cf_chain() {
  Outcome o;
  for (int a = 1; a <= 4; ++a) {
    const Precision p = precision_policy(a, 0);
    std::vector<Real> grid;
    for (int i = -5000; i <= 5000; ++i) grid.push_back(Real(i, p) / Real(100, p));
    const CfBoundReport r = cf_bound_check(Real(a, p), grid);
    o.require(r.grid_max <= r.tv_ceiling && r.tv_ceiling <= r.gauss_ceiling, "a=" + std::to_string(a));
    o.detail << "a=" << a << ": " << sci(r.grid_max, 3) << " <= " << sci(r.tv_ceiling, 3) << " <= "
             << sci(r.gauss_ceiling, 3) << "; ";
  }
  return o;
}

Outcome superflat() {
  Outcome o;
  std::mt19937_64 rng(88);
  std::uniform_real_distribution<double> u(-1, 1);
  Real prev(10, Precision(128));
  for (double a : {4.0, 6.0, 8.0}) {
    const Precision p = precision_policy(a, 2);
    const SuperflatMixture m = build_superflat(Real(a, p), RuleSizing::widest);
    Real worst(p);
    for (int i = 0; i < 50; ++i) {
      Complex z(u(rng), u(rng), p);
      // uniform in the unit disk
      while (abs(z) > 1) z = Complex(u(rng), u(rng), p);
      const Real scale = max(Real(1, p), abs(mixture_density(m, z)) * m.b_tilt * Real(3, p));
      const Real res = abs(tilt_identity_residual(m, z)) / scale;
      if (res > worst) worst = res;
    }
    o.require(worst <= pow2(-static_cast<long>(p.bits()) + 24, p), "identity residual");
    o.require(m.b_tilt >= 1, "B_tilt >= 1");
    FlatnessCertificate c = [&] {
      try {
        return flatness_certificate(m);
      } catch (const Error& e) {
        o.require(false, e.what());
        throw;
      }
    }();
    o.require(c.eps2 < prev, "eps2 decreasing");
    if (a >= 6) o.require(c.eps2 <= exp(Real(-a * a / 2, p)), "eps2 <= e^{-a^2/2}");
    prev = c.eps2.rounded(Precision(128));
    o.detail << "a=" << a << " k=" << m.atoms.size() << " B=" << sci(m.b_tilt, 4) << " eps2=" << sci(c.eps2, 3)
             << "; ";
  }
  const Precision p = precision_policy(8, 2);
  const SuperflatMixture th = build_superflat(Real(8, p));
  const FlatnessBounds fb = flatness_bounds(Measure(th.source), p, 1);
  o.detail << "k=ceil(a^2/8) at a=8 would give eps2=" << sci(fb.eps2, 3);
  return o;
}

Outcome oracles() {
  Outcome o;
  const Precision p(128);
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> loc(-3, 3), mass(0.05, 1);
  std::uniform_int_distribution<int> count(1, 6);
  Real worst(p);
  for (int t = 0; t < 10; ++t) {
    const int n = count(rng);
    std::vector<double> w(static_cast<std::size_t>(n));
    double total = 0;
    for (double& x : w) total += (x = mass(rng));
    std::vector<Atom> atoms;
    Real used(p);
    for (int i = 0; i < n; ++i) {
      Real mm = i + 1 < n ? Real(w[static_cast<std::size_t>(i)] / total, p) : Real(1, p) - used;
      used += mm;
      atoms.push_back({Real(loc(rng), p), mm});
    }
    const Measure m(DiscreteMeasure(std::move(atoms), p));
    const Real r(1, p);
    const Real boundary = sup_on_circle(m, r).sup_value;
    Real grid(p);
    for (int i = 1; i <= 24; ++i) {
      for (int j = 0; j < 720; ++j) {
        const Complex z = polar(r * Real(i, p) / Real(24, p), ldexp(pi(p), 1) * Real(j, p) / Real(720, p));
        const Real v = abs(b_error(m, z));
        if (v > grid) grid = v;
      }
    }
    const Real dev = abs(boundary - grid) / boundary;
    if (dev > worst) worst = dev;
  }
  o.require(worst <= Real(1e-3, p), "disk grid");
  const Real half = pow2(-64, p);
  const Real phi1 = abs(phi_cdf(Complex(Real(1, p)), p) - oracle::phi_cdf(Complex(Real(1, p)), p));
  const Complex q3_oracle = Complex(Real(1, p)) - oracle::phi_cdf(Complex(Real(3, p)), p);
  const Real q3 = abs(Complex(q_tail(Real(3, p))) - q3_oracle);
  o.require(phi1 <= half, "Phi(1)");
  o.require(q3 <= half, "Q(3)");
  o.detail << "boundary vs disk grid worst rel " << sci(worst, 3) << "; |Phi(1) - oracle| = " << sci(phi1, 3)
           << ", |Q(3) - oracle| = " << sci(q3, 3) << " (limit 2^-64 at 128 bits)";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, std::pair<const char*, std::function<Outcome()>>> criteria{
      {1, {"moment matching", moments}},
      {2, {"node containment", containment}},
      {3, {"closed-form cross-checks", closed_forms}},
      {4, {"truncation vs quadrature ordering and rates", figure}},
      {5, {"Taylor tail chain", tail}},
      {6, {"Hadamard convexity suites", hadamard}},
      {7, {"characteristic function chain", cf_chain}},
      {8, {"super-flat mixture", superflat}},
      {9, {"oracle equivalence", oracles}},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty()) {
    for (const auto& [n, c] : criteria) selected.push_back(n);
  }
  bool all = true;
  for (int n : selected) {
    const auto it = criteria.find(n);
    if (it == criteria.end()) {
      std::cerr << "unknown criterion " << n << '\n';
      return 2;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = it->second.second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.violations += std::string(" [error: ") + e.what() + "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::cout << "criterion " << n << " " << (o.pass ? "PASS" : "FAIL") << " | " << it->second.first << " | "
              << o.detail.str() << o.violations << " | " << std::fixed;
    std::cout.precision(1);
    std::cout << secs << "s" << std::endl;
    std::cout.unsetf(std::ios::fixed);
    std::cout.precision(6);
  }
  return all ? 0 : 1;
}
