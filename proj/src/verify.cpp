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

#include "gausdisk/verify.hpp"

#include <functional>
#include <random>

#include "gausdisk/experiments.hpp"
#include "gausdisk/superflat.hpp"

namespace gausdisk {

namespace {

struct Suite {
  VerifyReport report;

  void check(const std::string& module, const std::string& name, const std::function<std::string()>& body) {
    try {
      report.checks.push_back({module, name, true, body()});
    } catch (const Error& e) {
      report.checks.push_back({module, name, false, std::string(to_string(e.kind())) + ": " + e.what()});
    } catch (const std::exception& e) {
      report.checks.push_back({module, name, false, std::string("internal: ") + e.what()});
    }
  }
};

[[noreturn]] void broken(const std::string& what) { fail(ErrorKind::invariant_violation, what); }

Real tol(Precision p, long slack_bits) { return ldexp(Real(1, p), -static_cast<long>(p.bits()) + slack_bits); }

}  // namespace

bool VerifyReport::all_passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

VerifyReport run_verify(std::uint64_t seed) {
  Suite s;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  s.check("hp_arith", "exp(z) exp(-z) = 1", [&] {
    const Precision p(256);
    for (int i = 0; i < 200; ++i) {
      const Complex z(20 * unit(rng), 20 * unit(rng), p);
      const Complex one = exp_c(z, p) * exp_c(-z, p);
      if (abs(one - Real(1, p)) > tol(p, 8)) broken("exp_c product off at sample " + std::to_string(i));
    }
    return std::string("200 samples");
  });

  s.check("hp_arith", "serialize round trip", [&] {
    const Precision p(300);
    for (int i = 0; i < 100; ++i) {
      const Real x = exp(Real(40 * unit(rng), p)) * Real(1, p) / Real(3, p);
      const Real y = Real::deserialize(x.serialize());
      if (!(x == y) || y.precision() != p) broken("round trip changed " + x.to_decimal(20));
    }
    return std::string("100 values");
  });

  s.check("hermite", "moments match N(0,1) below order 2k", [&] {
    const Precision p(256);
    for (unsigned k = 1; k <= 16; ++k) {
      const QuadratureRule rule = build_rule(k, p);
      for (unsigned i = 0; i < 2 * k; ++i) {
        const Real want = i % 2 ? Real(p) : double_factorial(static_cast<long>(i) - 1, p);
        if (abs(moment(rule, i) - want) > ldexp(Real(1, p), -200) * max(Real(1, p), want)) {
          broken("k=" + std::to_string(k) + " moment " + std::to_string(i));
        }
      }
    }
    return std::string("k = 1..16");
  });

  s.check("hermite", "nodes within sqrt(4k+2) and interlacing", [&] {
    const Precision p(192);
    QuadratureRule prev = build_rule(1, p);
    for (unsigned k = 2; k <= 40; ++k) {
      const QuadratureRule rule = build_rule(k, p);
      if (rule.max_node() > sqrt(Real(static_cast<long>(4 * k + 2), p))) broken("k=" + std::to_string(k));
      for (std::size_t j = 0; j + 1 < k; ++j) {
        if (!(rule.nodes()[j] < prev.nodes()[j] && prev.nodes()[j] < rule.nodes()[j + 1])) {
          broken("interlacing fails at k=" + std::to_string(k));
        }
      }
      prev = rule;
    }
    return std::string("k = 1..40");
  });

  s.check("measures", "two-point rule transform is cosh", [&] {
    const Precision p(256);
    const Measure m(DiscreteMeasure::from_rule(build_rule(2, p)));
    for (int i = 0; i < 50; ++i) {
      const Complex z(5 * unit(rng), 5 * unit(rng), p);
      const Complex cosh_z = (exp(z) + exp(-z)) * ldexp(Real(1, p), -1);
      if (abs(laplace(m, z) - cosh_z) > tol(p, 24) * max(Real(1, p), abs(cosh_z))) broken("sample " + std::to_string(i));
    }
    return std::string("50 samples");
  });

  s.check("measures", "truncated transform symmetry and normalization", [&] {
    const Precision p = precision_policy(3, 2);
    const Measure m(TruncatedGaussian(Real(3, p)));
    if (abs(laplace(m, Complex(p)) - Real(1, p)) > tol(p, 24)) broken("L(0) != 1");
    for (int i = 0; i < 20; ++i) {
      const Complex z(2 * unit(rng), 2 * unit(rng), p);
      const Complex lz = laplace(m, z);
      if (abs(lz - laplace(m, -z)) > tol(p, 24) * max(Real(1, p), abs(lz))) broken("L(-z) != L(z)");
      if (abs(conj(lz) - laplace(m, conj(z))) > tol(p, 24) * max(Real(1, p), abs(lz))) broken("conjugation");
    }
    return std::string("20 samples");
  });

  s.check("measures", "characteristic function ceiling chain", [&] {
    const Precision p = precision_policy(2, 0);
    std::vector<Real> grid;
    for (int i = -200; i <= 200; ++i) grid.emplace_back(Real(i, p) / 10);
    const CfBoundReport r = cf_bound_check(Real(2, p), grid);
    return "a=2 grid_max=" + r.grid_max.to_decimal(6) + " 4Q(a)=" + r.tv_ceiling.to_decimal(6);
  });

  s.check("disk_analysis", "three circles on the quadrature measure", [&] {
    const Precision p = precision_policy(4, 20);
    const Measure m(DiscreteMeasure::from_rule(build_rule(k_for_support(Real(4, p)), p)));
    const ThreeCirclesReport r = three_circles_check(m, Real(1, p), Real(12, p), Real(20, p));
    return "lhs=" + r.lhs.to_decimal(8) + " rhs=" + r.rhs.to_decimal(8);
  });

  s.check("disk_analysis", "three lines for a point mass at zero", [&] {
    const Precision p = precision_policy(1, 6);
    const Measure m(DiscreteMeasure::point_mass(Real(p)));
    const ThreeLinesReport r = three_lines_check(m, Real(1, p));
    if (r.status != CheckStatus::holds) broken("degenerate line data");
    return "lhs=" + r.lhs.to_decimal(8) + " rhs=" + r.rhs.to_decimal(8);
  });

  s.check("disk_analysis", "boundary sup dominates interior samples", [&] {
    const Precision p(192);
    const Measure m(DiscreteMeasure::from_rule(build_rule(3, p)));
    const Real r(2, p);
    const Real sup = sup_on_circle(m, r).sup_value;
    for (int i = 0; i < 200; ++i) {
      const Complex z = polar(r * Real(std::abs(unit(rng)), p), Real(3.2 * unit(rng), p));
      if (abs(b_error(m, z)) > sup * Real(1.0000001, p)) broken("interior value above boundary sup");
    }
    return "M(2)=" + sup.to_decimal(10);
  });

  s.check("disk_analysis", "Taylor coefficients of e^{z^2/2} L e^{-z^2/2}", [&] {
    const Precision p(192);
    const Measure m(DiscreteMeasure::from_rule(build_rule(3, p)));
    const auto c = taylor_coeffs(m, Real(1, p), 12);
    // L(z) e^{-z^2/2} = 1 + O(z^6) for a 3-point rule.
    if (abs(c[0] - Real(1, p)) > ldexp(Real(1, p), -100)) broken("c0 != 1");
    for (std::size_t n = 1; n < 6; ++n) {
      if (abs(c[n]) > ldexp(Real(1, p), -100)) broken("c" + std::to_string(n) + " != 0");
    }
    if (abs(c[6]) < ldexp(Real(1, p), -20)) broken("c6 vanished");
    return "c6=" + c[6].re().to_decimal(10);
  });

  s.check("superflat", "tilt identity and flatness certificate", [&] {
    const Precision p = precision_policy(6, 2);
    const SuperflatMixture mix = build_superflat(Real(6, p), RuleSizing::widest);
    if (mix.b_tilt < 1) broken("B_tilt < 1");
    for (int i = 0; i < 20; ++i) {
      const Complex z(3 * unit(rng), 3 * unit(rng), p);
      if (abs(tilt_identity_residual(mix, z)) > tol(p, 24) * max(Real(1, p), abs(mixture_density(mix, z)) * mix.b_tilt * 3)) {
        broken("identity residual");
      }
    }
    const FlatnessCertificate cert = flatness_certificate(mix);
    return "eps2=" + cert.eps2.to_decimal(6);
  });

  s.check("experiments", "quadrature beats truncation on a small grid", [&] {
    const std::vector<double> grid{4, 6};
    const RateTable t = run_figure(grid, 1.0, RuleSizing::widest);
    for (const auto& row : t.rows) {
      if (!(row.err_quad < row.err_trunc)) broken("ordering at a=" + row.a.to_decimal(4));
    }
    return "c1_fit=" + t.c1_fit->to_decimal(8);
  });

  s.check("experiments", "tail chain for N(0,1) in place of the rule", [&] {
    const Precision p(128);
    const TailChainReport r = validate_tail_bound(Measure(StdGaussianRef{}), Real(6, p), 5, Real(1, p), Real(1.4, p));
    if (!r.err_quad.is_zero()) broken("nonzero error for N(0,1)");
    return "status=" + to_string(r.status);
  });

  return s.report;
}

}  // namespace gausdisk
