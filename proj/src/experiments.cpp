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

#include "gausdisk/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gausdisk {

namespace {

Real euler(Precision p) { return exp(Real(1, p)); }

double log10_of(const Real& x) { return (log(x) / log(Real(10, x.precision()))).to_double(); }

std::string fixed(double v, int decimals = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0) fail(ErrorKind::insufficient_data, "rate fit needs at least two distinct a values");
  return sxy / sxx;
}

double ln_of(const Real& x) {
  if (x.sign() <= 0) fail(ErrorKind::insufficient_data, "rate fit needs positive errors");
  return log(x).to_double();
}

Real bound_value(const Real& a, const Real& b, const Real& c1) {
  const Precision p = a.precision();
  return Real(3, p) * pow(c1 * b / a, ldexp(a * a, -2));
}

}  // namespace

RateTable run_figure(std::span<const double> a_grid, double b, RuleSizing sizing,
                     const ScanOptions& scan, unsigned extra_bits) {
  require(b >= 1, "run_figure needs b >= 1");
  for (double a : a_grid) require(a >= 2, "run_figure needs every a >= 2");
  std::vector<double> grid(a_grid.begin(), a_grid.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  RateTable table{{}, Real(b, Precision(128)), scan, sizing, extra_bits, std::nullopt};
  for (double a_value : grid) {
    const Precision p = precision_policy(a_value, b).plus(extra_bits);
    const Real a(a_value, p);
    const Real radius(b, p);
    const unsigned k = rule_size(a, sizing);
    Real err_trunc = sup_on_circle(Measure(TruncatedGaussian(a)), radius, scan).sup_value;
    Real err_quad =
        sup_on_circle(Measure(DiscreteMeasure::from_rule(build_rule(k, p))), radius, scan).sup_value;
    if (err_trunc.sign() <= 0 || err_quad.sign() <= 0) {
      fail(ErrorKind::invariant_violation, "non-positive disk error at a=" + a.to_decimal(6));
    }
    table.rows.push_back({a, k, std::move(err_trunc), std::move(err_quad), std::nullopt, p});
  }
  if (!table.rows.empty()) attach_tail_bounds(table);
  return table;
}

Real fit_c1(const RateTable& table) {
  Precision p = table.b.precision();
  for (const auto& row : table.rows) p = max(p, row.precision);
  const Real b = table.b.rounded(p);
  Real c1 = ldexp(euler(p), -1);
  // 3 (c b/a)^{a^2/4} is increasing in c, so each row has an exact threshold.
  for (const auto& row : table.rows) {
    const Real a = row.a.rounded(p);
    const Real need = a / b * pow(row.err_quad.rounded(p) / Real(3, p), Real(4, p) / (a * a));
    c1 = max(c1, need);
  }
  return c1;
}

void attach_tail_bounds(RateTable& table) {
  const Real c1 = fit_c1(table);
  for (auto& row : table.rows) {
    const Real c = c1.rounded(row.precision);
    const Real b = table.b.rounded(row.precision);
    row.tail_bound.reset();
    if (row.a > ldexp(c * b, 1)) row.tail_bound = bound_value(row.a, b, c);
  }
  table.c1_fit = c1;
}

double fit_truncation_rate(const RateTable& table) {
  std::vector<double> x, y;
  for (const auto& row : table.rows) {
    if (row.a < 4) continue;
    const double a = row.a.to_double();
    x.push_back(a * a);
    y.push_back(ln_of(row.err_trunc));
  }
  if (x.size() < 4) fail(ErrorKind::insufficient_data, "truncation rate fit needs 4 rows with a >= 4");
  return slope(x, y);
}

double fit_quadrature_rate(const RateTable& table) {
  std::vector<double> x, y;
  for (const auto& row : table.rows) {
    if (row.a < 6) continue;
    const double a = row.a.to_double();
    x.push_back(a * a * std::log(a));
    y.push_back(ln_of(row.err_quad));
  }
  if (x.size() < 4) fail(ErrorKind::insufficient_data, "quadrature rate fit needs 4 rows with a >= 6");
  return slope(x, y);
}

TailChainReport tail_chain(const Real& a_in, unsigned k, const Real& b_in, const Real& c1_in,
                           const Real& err_quad) {
  require(k >= 1, "tail_chain needs k >= 1");
  require(a_in > 0 && b_in > 0 && c1_in > 0, "tail_chain needs positive a, b, c1");
  const Precision p = max(max(a_in.precision(), b_in.precision()), c1_in.precision());
  const Real a = a_in.rounded(p), b = b_in.rounded(p), c1 = c1_in.rounded(p);
  const Real e = euler(p);
  const Real two_k(2 * static_cast<long>(k), p);

  // Each bracket is (c/l)^{2l} or (d/l)^l; successive ratios decrease in l,
  // so the last ratio below 1 bounds the remainder geometrically.
  Real tight(p);
  {
    Real prev1(p), prev2(p);
    const Real eps = ldexp(Real(1, p), -static_cast<long>(p.bits()));
    for (unsigned long l = k;; ++l) {
      const Real two_l(2 * static_cast<long>(l), p);
      const Real t1 = pow(e * a * b / two_l, 2 * static_cast<long>(l));
      const Real t2 = pow(e * e * b * b / two_l, static_cast<long>(l));
      tight += t1 + t2;
      if (l > k) {
        const Real r1 = t1 / prev1, r2 = t2 / prev2;
        if (r1 < Real(0.5, p) && r2 < Real(0.5, p)) {
          const Real rest = t1 * r1 / (Real(1, p) - r1) + t2 * r2 / (Real(1, p) - r2);
          if (rest <= tight * eps) {
            tight += rest;
            break;
          }
        }
      }
      prev1 = t1;
      prev2 = t2;
      if (l > k + 100000) fail(ErrorKind::convergence_failure, "tail sum did not settle");
    }
  }

  std::optional<Real> k_sum;
  const Real q1 = pow(e * a * b / two_k, 2L);
  const Real q2 = e * e * b * b / two_k;
  if (q1 < 1 && q2 < 1) {
    const long kl = static_cast<long>(k);
    k_sum = pow(q1, kl) / (Real(1, p) - q1) + pow(q2, kl) / (Real(1, p) - q2);
  }

  Real c1_proof = max(e * a * a / two_k, e * a / sqrt(two_k));
  Real bound = bound_value(a, b, c1);
  const Real err = err_quad.rounded(p);

  // The scan underestimates the sup, so exceeding the tight sum is a defect.
  if (err > tight * (Real(1, p) + ldexp(Real(1, p), -static_cast<long>(p.bits()) + 16))) {
    fail(ErrorKind::invariant_violation, "measured error " + err.to_decimal(12) +
                                             " exceeds the Taylor tail sum " + tight.to_decimal(12));
  }

  TailStatus status = TailStatus::holds;
  if (c1 * b / a >= Real(0.5, p)) {
    status = TailStatus::regime_not_met;
  } else if (!k_sum) {
    status = TailStatus::sum_diverges;
  } else if (err > *k_sum) {
    status = TailStatus::err_exceeds_sum;
  } else if (*k_sum > bound) {
    status = TailStatus::sum_exceeds_bound;
  }
  return {a, b, k, c1, std::move(c1_proof), err, std::move(tight), std::move(k_sum), std::move(bound),
          status};
}

TailChainReport validate_tail_bound(const Real& a, const Real& b, const Real& c1, RuleSizing sizing,
                                    const ScanOptions& scan) {
  const Precision p = max(a.precision(), precision_policy(a.to_double(), b.to_double()));
  const Real ap = a.rounded(p);
  const unsigned k = rule_size(ap, sizing);
  return validate_tail_bound(Measure(DiscreteMeasure::from_rule(build_rule(k, p))), ap, k, b, c1, scan);
}

TailChainReport validate_tail_bound(const Measure& m, const Real& a, unsigned k, const Real& b,
                                    const Real& c1, const ScanOptions& scan) {
  const Precision p = max(a.precision(), b.precision());
  const Real err = sup_on_circle(m, b.rounded(p), scan).sup_value;
  return tail_chain(a.rounded(p), k, b.rounded(p), c1, err);
}

std::string to_string(TailStatus status) {
  switch (status) {
    case TailStatus::holds: return "holds";
    case TailStatus::regime_not_met: return "regime_not_met";
    case TailStatus::sum_diverges: return "sum_diverges";
    case TailStatus::err_exceeds_sum: return "err_exceeds_sum";
    case TailStatus::sum_exceeds_bound: return "sum_exceeds_bound";
  }
  return "unknown";
}

std::string figure_csv(const RateTable& table) {
  std::ostringstream out;
  out << "a,k,log10_err_trunc,log10_err_quad,log10_tail_bound\n";
  for (const auto& row : table.rows) {
    out << fixed(row.a.to_double(), 6) << ',' << row.k << ',' << fixed(log10_of(row.err_trunc)) << ','
        << fixed(log10_of(row.err_quad)) << ',';
    if (row.tail_bound) out << fixed(log10_of(*row.tail_bound));
    out << '\n';
  }
  return out.str();
}

std::string figure_svg(const RateTable& table) {
  require(!table.rows.empty(), "figure needs a nonempty table");
  const double w = 720, h = 480, left = 90, right = 30, top = 40, bottom = 70;
  double a_lo = table.rows.front().a.to_double(), a_hi = table.rows.back().a.to_double();
  if (a_hi == a_lo) {
    a_lo -= 0.5;
    a_hi += 0.5;
  }
  double y_lo = 0, y_hi = -1e300;
  struct Series {
    std::vector<std::pair<double, double>> pts;
    std::string color, label, dash;
  };
  Series trunc{{}, "#c0392b", "truncated Gaussian", ""};
  Series quad{{}, "#1f5fa8", "Gauss-Hermite", ""};
  Series tail{{}, "#555555", "3(c1 b/a)^(a^2/4)", "6,4"};
  for (const auto& row : table.rows) {
    const double a = row.a.to_double();
    trunc.pts.emplace_back(a, log10_of(row.err_trunc));
    quad.pts.emplace_back(a, log10_of(row.err_quad));
    if (row.tail_bound) tail.pts.emplace_back(a, log10_of(*row.tail_bound));
  }
  for (const Series* s : {&trunc, &quad, &tail}) {
    for (const auto& [x, y] : s->pts) {
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  y_lo = std::floor(y_lo / 10) * 10;
  y_hi = std::max(0.0, std::ceil(y_hi / 10) * 10);
  if (y_hi == y_lo) y_hi = y_lo + 10;
  const auto sx = [&](double a) { return left + (a - a_lo) / (a_hi - a_lo) * (w - left - right); };
  const auto sy = [&](double y) { return top + (y_hi - y) / (y_hi - y_lo) * (h - top - bottom); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" font-family=\"sans-serif\" font-size=\"13\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << h - bottom << "\" x2=\"" << w - right << "\" y2=\""
      << h - bottom << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << h - bottom
      << "\" stroke=\"black\"/>\n";
  const double y_step = (y_hi - y_lo) > 100 ? 20 : 10;
  for (double y = y_lo; y <= y_hi + 1e-9; y += y_step) {
    out << "<line x1=\"" << left - 5 << "\" y1=\"" << fixed(sy(y), 2) << "\" x2=\"" << left << "\" y2=\""
        << fixed(sy(y), 2) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << left - 8 << "\" y=\"" << fixed(sy(y) + 4, 2) << "\" text-anchor=\"end\">"
        << fixed(y, 0) << "</text>\n";
  }
  for (const auto& row : table.rows) {
    const double a = row.a.to_double();
    out << "<line x1=\"" << fixed(sx(a), 2) << "\" y1=\"" << h - bottom << "\" x2=\"" << fixed(sx(a), 2)
        << "\" y2=\"" << h - bottom + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fixed(sx(a), 2) << "\" y=\"" << h - bottom + 20 << "\" text-anchor=\"middle\">"
        << fixed(a, 1) << "</text>\n";
  }
  out << "<text x=\"" << (left + w - right) / 2 << "\" y=\"" << h - 20
      << "\" text-anchor=\"middle\">support half-width a</text>\n";
  out << "<text transform=\"translate(24," << (top + h - bottom) / 2
      << ") rotate(-90)\" text-anchor=\"middle\">log10 sup over |z|=" << fixed(table.b.to_double(), 2)
      << " of |L(z) - exp(z^2/2)|</text>\n";
  int legend = 0;
  for (const Series* s : {&trunc, &quad, &tail}) {
    if (s->pts.empty()) continue;
    out << "<polyline fill=\"none\" stroke=\"" << s->color << "\" stroke-width=\"2\"";
    if (!s->dash.empty()) out << " stroke-dasharray=\"" << s->dash << "\"";
    out << " points=\"";
    for (const auto& [x, y] : s->pts) out << fixed(sx(x), 2) << ',' << fixed(sy(y), 2) << ' ';
    out << "\"/>\n";
    for (const auto& [x, y] : s->pts) {
      out << "<circle cx=\"" << fixed(sx(x), 2) << "\" cy=\"" << fixed(sy(y), 2) << "\" r=\"3\" fill=\""
          << s->color << "\"/>\n";
    }
    const double ly = h - bottom - 20 - 18 * legend++;
    out << "<line x1=\"" << left + 15 << "\" y1=\"" << ly << "\" x2=\"" << left + 45 << "\" y2=\"" << ly
        << "\" stroke=\"" << s->color << "\" stroke-width=\"2\"";
    if (!s->dash.empty()) out << " stroke-dasharray=\"" << s->dash << "\"";
    out << "/>\n<text x=\"" << left + 52 << "\" y=\"" << ly + 4 << "\">" << s->label << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string run_manifest(const RateTable& table, int digits) {
  nlohmann::ordered_json j;
  j["b"] = table.b.to_decimal(digits);
  j["sizing"] = to_string(table.sizing);
  j["scan"] = {{"n_samples", table.scan.n_samples}, {"refine_iters", table.scan.refine_iters}};
  j["extra_bits"] = table.extra_bits;
  j["c1_fit"] = table.c1_fit ? nlohmann::ordered_json(table.c1_fit->to_decimal(digits)) : nullptr;
  auto grid = nlohmann::ordered_json::array();
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    grid.push_back(row.a.to_decimal(digits));
    nlohmann::ordered_json r;
    r["a"] = row.a.to_decimal(digits);
    r["k"] = row.k;
    r["precision_bits"] = row.precision.bits();
    r["err_trunc"] = row.err_trunc.to_decimal(digits);
    r["err_quad"] = row.err_quad.to_decimal(digits);
    r["tail_bound"] = row.tail_bound ? nlohmann::ordered_json(row.tail_bound->to_decimal(digits)) : nullptr;
    rows.push_back(std::move(r));
  }
  j["grid"] = std::move(grid);
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

void emit_figure(const RateTable& table, FigureFormat format, const std::string& path) {
  require(!table.rows.empty(), "emit_figure needs a nonempty table");
  const std::string body = format == FigureFormat::csv ? figure_csv(table) : figure_svg(table);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::io_failure, "cannot open '" + path + "' for writing");
  out << body;
  out.flush();
  if (!out) fail(ErrorKind::io_failure, "failed writing '" + path + "'");
}

}  // namespace gausdisk
