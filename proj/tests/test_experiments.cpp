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

#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "gausdisk/experiments.hpp"

using namespace gausdisk;

namespace {

RateTable planted(const std::vector<double>& grid, double (*trunc)(double), double (*quad)(double)) {
  const Precision p(128);
  RateTable t{{}, Real(1, p), {}, RuleSizing::standard, 0, std::nullopt};
  for (double a : grid) {
    t.rows.push_back({Real(a, p), 1, Real(trunc(a), p), Real(quad(a), p), std::nullopt, p});
  }
  return t;
}

double gauss_half(double a) { return std::exp(-a * a / 2); }
double gauss_half7(double a) { return 7 * std::exp(-a * a / 2); }
double quarter_log(double a) { return std::pow(1 / a, a * a / 4); }
double gauss_full(double a) { return std::exp(-a * a); }

Real rel(const Real& x, const Real& y) { return abs(x - y) / abs(y); }

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("planted truncation rates") {
  const std::vector<double> grid{4, 5, 6, 7, 8};
  CHECK(fit_truncation_rate(planted(grid, gauss_half, gauss_half)) == doctest::Approx(-0.5).epsilon(1e-9));
  CHECK(fit_truncation_rate(planted(grid, gauss_half7, gauss_half)) == doctest::Approx(-0.5).epsilon(1e-9));
  CHECK_THROWS_AS(fit_truncation_rate(planted({2, 3, 4, 5, 6}, gauss_half, gauss_half)), Error);
}

TEST_CASE("planted quadrature rates") {
  const std::vector<double> grid{6, 7, 8, 9, 10, 11, 12};
  CHECK(fit_quadrature_rate(planted(grid, gauss_half, quarter_log)) == doctest::Approx(-0.25).epsilon(1e-9));
  // The wrong model e^{-a^2} drifts as the grid moves out.
  const double near = fit_quadrature_rate(planted({6, 7, 8, 9}, gauss_half, gauss_full));
  const double far = fit_quadrature_rate(planted({20, 21, 22, 23}, gauss_half, gauss_full));
  CHECK(std::fabs(far) < std::fabs(near));
  CHECK(std::fabs(near + 0.25) > 0.05);
  try {
    (void)fit_quadrature_rate(planted({4, 5, 6, 7}, gauss_half, gauss_half));
    FAIL("expected insufficient data");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::insufficient_data);
  }
}

TEST_CASE("c1 fit is the smallest admissible constant") {
  RateTable tiny = planted({6, 8}, gauss_half, [](double) { return 1e-300; });
  CHECK(rel(fit_c1(tiny), exp(Real(1, Precision(128))) / Real(2, Precision(128))) < Real(1e-30, Precision(128)));
  RateTable big = planted({6, 8}, gauss_half, [](double) { return 1e-3; });
  const Real c1 = fit_c1(big);
  bool tight = false;
  for (const auto& row : big.rows) {
    const Real bound = Real(3, Precision(128)) * pow(c1 / row.a, row.a * row.a / Real(4, Precision(128)));
    CHECK(bound >= row.err_quad * (Real(1, Precision(128)) - Real("1e-25", Precision(128))));
    if (rel(bound, row.err_quad) < Real(1e-20, Precision(128))) tight = true;
  }
  CHECK(tight);
  attach_tail_bounds(big);
  REQUIRE(big.c1_fit.has_value());
  for (const auto& row : big.rows) CHECK(row.tail_bound.has_value() == (row.a > *big.c1_fit * 2));
}

TEST_CASE("tail chain at a = 6 with the standard rule") {
  const Precision p = precision_policy(6, 1);
  const Real c1 = exp(Real(1, p)) / Real(2, p);
  const TailChainReport r = validate_tail_bound(Real(6, p), Real(1, p), c1);
  CHECK(r.k == 5);
  CHECK(r.err_quad > 0);
  CHECK(r.err_quad <= r.tight_sum);
  // e a /(2k) = 1.63: the k-frozen sum diverges
  CHECK_FALSE(r.k_sum.has_value());
  CHECK(r.status == TailStatus::sum_diverges);
  CHECK(r.c1_proof > c1);

  const TailChainReport out = tail_chain(Real(6, p), 5, Real(1, p), Real(4, p), r.err_quad);
  CHECK(out.status == TailStatus::regime_not_met);

  const TailChainReport g = validate_tail_bound(Measure(StdGaussianRef{}), Real(6, p), 5, Real(1, p), c1);
  CHECK(g.err_quad.is_zero());

  CHECK_THROWS_AS(tail_chain(Real(6, p), 5, Real(1, p), c1, Real(1e6, p)), Error);
}

TEST_CASE("tail chain closes where the frozen sum converges") {
  const Precision p = precision_policy(10, 1);
  const Real c1 = exp(Real(1, p)) / Real(2, p);
  const TailChainReport r = validate_tail_bound(Real(10, p), Real(1, p), c1, RuleSizing::widest);
  REQUIRE(r.k_sum.has_value());
  CHECK(r.err_quad <= r.tight_sum);
  CHECK(r.tight_sum <= *r.k_sum);
  CHECK(r.status == TailStatus::holds);
}

TEST_CASE("figure rows") {
  CHECK(run_figure(std::vector<double>{}).rows.empty());
  CHECK_THROWS_AS(run_figure(std::vector<double>{1.5}), Error);

  const RateTable t = run_figure(std::vector<double>{4});
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0].k == 2);
  const Precision p = t.rows[0].precision;
  const Real direct = sup_on_circle(Measure(DiscreteMeasure::from_rule(build_rule(2, p))), Real(1, p)).sup_value;
  CHECK(t.rows[0].err_quad == direct);

  const std::string csv = figure_csv(t);
  CHECK(csv.rfind("a,k,log10_err_trunc,log10_err_quad,log10_tail_bound\n4.000000,2,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
}

TEST_CASE("widest rules beat truncation and the table is stable in precision") {
  const std::vector<double> grid{4, 5, 6};
  const RateTable t = run_figure(grid, 1.0, RuleSizing::widest);
  const RateTable u = run_figure(grid, 1.0, RuleSizing::widest, {}, 64);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(t.rows[i].err_quad < t.rows[i].err_trunc);
    if (i > 0) {
      CHECK(t.rows[i].err_quad < t.rows[i - 1].err_quad);
      CHECK(t.rows[i].err_trunc < t.rows[i - 1].err_trunc);
      CHECK(t.rows[i].err_quad / t.rows[i].err_trunc < t.rows[i - 1].err_quad / t.rows[i - 1].err_trunc);
    }
    CHECK(u.rows[i].precision.bits() == t.rows[i].precision.bits() + 64);
    CHECK(rel(u.rows[i].err_quad, t.rows[i].err_quad) < Real(1e-6, Precision(128)));
    CHECK(rel(u.rows[i].err_trunc, t.rows[i].err_trunc) < Real(1e-6, Precision(128)));
  }

  const std::string svg = figure_svg(t);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("support half-width a") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);

  const auto j = nlohmann::json::parse(run_manifest(t));
  CHECK(j["rows"].size() == 3);
  CHECK(j["sizing"] == "widest");
  CHECK(j["scan"]["n_samples"] == 1024);
  CHECK(Real(j["rows"][1]["err_quad"].get<std::string>(), t.rows[1].precision) == t.rows[1].err_quad);

  const auto dir = std::filesystem::temp_directory_path() / "gausdisk_emit_test";
  std::filesystem::create_directories(dir);
  emit_figure(t, FigureFormat::csv, (dir / "fig.csv").string());
  std::ifstream in(dir / "fig.csv");
  std::string first;
  std::getline(in, first);
  CHECK(first == "a,k,log10_err_trunc,log10_err_quad,log10_tail_bound");
  try {
    emit_figure(t, FigureFormat::svg, (dir / "missing" / "fig.svg").string());
    FAIL("expected io failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::io_failure);
  }
  RateTable empty = t;
  empty.rows.clear();
  CHECK_THROWS_AS(emit_figure(empty, FigureFormat::csv, (dir / "e.csv").string()), Error);
  std::filesystem::remove_all(dir);
}

}  // TEST_SUITE
