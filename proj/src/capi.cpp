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

#include "gausdisk/gausdisk.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "gausdisk/experiments.hpp"
#include "gausdisk/superflat.hpp"
#include "gausdisk/verify.hpp"

struct gd_measure {
  gausdisk::Measure value;
};
struct gd_table {
  gausdisk::RateTable value;
};
struct gd_mixture {
  gausdisk::SuperflatMixture value;
};

namespace {

using namespace gausdisk;

thread_local std::string last_error;

gd_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return GD_ERR_INVALID_ARGUMENT;
    case ErrorKind::precision_unachievable: return GD_ERR_PRECISION;
    case ErrorKind::convergence_failure: return GD_ERR_CONVERGENCE;
    case ErrorKind::support_violation: return GD_ERR_SUPPORT;
    case ErrorKind::invariant_violation: return GD_ERR_INVARIANT;
    case ErrorKind::insufficient_data: return GD_ERR_INSUFFICIENT_DATA;
    case ErrorKind::io_failure: return GD_ERR_IO;
  }
  return GD_ERR_INTERNAL;
}

template <class F>
gd_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return GD_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return GD_ERR_INTERNAL;
}

void need(const void* p, const char* what) {
  if (p == nullptr) fail(ErrorKind::invalid_argument, std::string("null ") + what);
}

char* give(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Precision bits_of(unsigned long bits) {
  require(bits >= Precision::min_bits, "precision must be at least 64 bits");
  return Precision(bits);
}

double parse_double(const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    fail(ErrorKind::invalid_argument, "not a number: '" + text + "'");
  }
  return v;
}

unsigned parse_unsigned(const std::string& text) {
  char* end = nullptr;
  const unsigned long v = std::strtoul(text.c_str(), &end, 10);
  if (text.empty() || text[0] == '-' || end != text.c_str() + text.size() || v > 100000) {
    fail(ErrorKind::invalid_argument, "not a valid count: '" + text + "'");
  }
  return static_cast<unsigned>(v);
}

Measure parse_measure(const std::string& descriptor, Precision p) {
  const auto colon = descriptor.find(':');
  const std::string head = descriptor.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : descriptor.substr(colon + 1);
  if (descriptor == "gaussian") return StdGaussianRef{};
  if (descriptor.rfind("truncated a=", 0) == 0) return truncated_from_text(descriptor, p);
  if (colon == std::string::npos || rest.empty()) {
    fail(ErrorKind::invalid_argument, "unknown measure descriptor '" + descriptor + "'");
  }
  if (head == "rule") {
    const unsigned k = parse_unsigned(rest);
    require(k >= 1, "rule size must be positive");
    return DiscreteMeasure::from_rule(build_rule(k, p));
  }
  if (head == "support") {
    std::string a_text = rest;
    RuleSizing sizing = RuleSizing::standard;
    if (const auto c = rest.find(':'); c != std::string::npos) {
      a_text = rest.substr(0, c);
      const std::string mode = rest.substr(c + 1);
      if (mode == "widest") {
        sizing = RuleSizing::widest;
      } else if (mode != "standard") {
        fail(ErrorKind::invalid_argument, "unknown rule sizing '" + mode + "'");
      }
    }
    parse_double(a_text);
    const Real a(a_text, p);
    return DiscreteMeasure::from_rule(build_rule(rule_size(a, sizing), p));
  }
  if (head == "truncated") {
    parse_double(rest);
    return TruncatedGaussian(Real(rest, p));
  }
  if (head == "point") {
    parse_double(rest);
    return DiscreteMeasure::point_mass(Real(rest, p));
  }
  if (head == "file") {
    std::ifstream in(rest, std::ios::binary);
    if (!in) fail(ErrorKind::io_failure, "cannot read '" + rest + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (text.rfind("truncated", 0) == 0) return truncated_from_text(text, p);
    return discrete_from_csv(text, p);
  }
  fail(ErrorKind::invalid_argument, "unknown measure descriptor '" + descriptor + "'");
}

Real parse_real(const char* text, Precision p) {
  need(text, "number");
  parse_double(text);
  return Real(std::string_view(text), p);
}

RuleSizing sizing_of(gd_sizing s) {
  switch (s) {
    case GD_SIZING_STANDARD: return RuleSizing::standard;
    case GD_SIZING_WIDEST: return RuleSizing::widest;
  }
  fail(ErrorKind::invalid_argument, "unknown rule sizing");
}

}  // namespace

extern "C" {

const char* gd_last_error(void) { return last_error.c_str(); }

const char* gd_status_name(gd_status status) {
  switch (status) {
    case GD_OK: return "ok";
    case GD_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case GD_ERR_PRECISION: return "precision_unachievable";
    case GD_ERR_CONVERGENCE: return "convergence_failure";
    case GD_ERR_SUPPORT: return "support_violation";
    case GD_ERR_INVARIANT: return "invariant_violation";
    case GD_ERR_INSUFFICIENT_DATA: return "insufficient_data";
    case GD_ERR_IO: return "io_failure";
    case GD_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void gd_string_free(char* s) { std::free(s); }

gd_status gd_policy_bits(double support, double radius, unsigned long* bits) {
  return guarded([&] {
    need(bits, "output");
    *bits = precision_policy(support, radius).bits();
  });
}

gd_status gd_rule_csv(unsigned k, unsigned long bits, int digits, char** out) {
  return guarded([&] {
    need(out, "output");
    require(k >= 1, "rule size must be positive");
    *out = give(rule_csv(build_rule(k, bits_of(bits)), digits));
  });
}

gd_status gd_measure_parse(const char* descriptor, unsigned long bits, gd_measure** out) {
  return guarded([&] {
    need(descriptor, "descriptor");
    need(out, "output");
    *out = new gd_measure{parse_measure(descriptor, bits_of(bits))};
  });
}

void gd_measure_free(gd_measure* m) { delete m; }

gd_status gd_measure_describe(const gd_measure* m, char** out) {
  return guarded([&] {
    need(m, "measure");
    need(out, "output");
    *out = give(describe(m->value));
  });
}

gd_status gd_measure_support(const gd_measure* m, double* support, int* bounded) {
  return guarded([&] {
    need(m, "measure");
    need(support, "output");
    need(bounded, "output");
    const auto s = support_bound(m->value);
    *bounded = s.has_value();
    *support = s ? s->to_double() : 0.0;
  });
}

gd_status gd_laplace(const gd_measure* m, const char* re, const char* im, unsigned long bits, int digits,
                     char** re_out, char** im_out) {
  return guarded([&] {
    need(m, "measure");
    need(re_out, "output");
    need(im_out, "output");
    const Precision p = bits_of(bits);
    const Complex v = laplace(m->value, Complex(parse_real(re, p), parse_real(im, p)));
    std::string r = v.re().to_decimal(digits), i = v.im().to_decimal(digits);
    *re_out = give(r);
    *im_out = give(i);
  });
}

gd_status gd_char_fn(const gd_measure* m, const char* t, unsigned long bits, int digits, char** re_out,
                     char** im_out) {
  return guarded([&] {
    need(m, "measure");
    need(re_out, "output");
    need(im_out, "output");
    const Complex v = char_fn(m->value, parse_real(t, bits_of(bits)));
    std::string r = v.re().to_decimal(digits), i = v.im().to_decimal(digits);
    *re_out = give(r);
    *im_out = give(i);
  });
}

gd_status gd_supdisk(const gd_measure* m, const char* radius, unsigned long bits, size_t n_samples,
                     int digits, char** out) {
  return guarded([&] {
    need(m, "measure");
    need(out, "output");
    require(n_samples >= 64, "need at least 64 samples");
    const Real r = parse_real(radius, bits_of(bits));
    require(r > 0, "radius must be positive");
    ScanOptions opts;
    opts.n_samples = n_samples;
    const DiskErrorReport report = sup_on_circle(m->value, r, opts);
    *out = give(disk_report_csv_header() + "\n" + to_csv_row(report, digits) + "\n");
  });
}

gd_status gd_figure_run(const double* grid, size_t n, double b, gd_sizing sizing, size_t n_samples,
                        unsigned extra_bits, gd_table** out) {
  return guarded([&] {
    need(out, "output");
    if (n > 0) need(grid, "grid");
    require(n_samples >= 64, "need at least 64 samples");
    ScanOptions opts;
    opts.n_samples = n_samples;
    *out = new gd_table{run_figure({grid, n}, b, sizing_of(sizing), opts, extra_bits)};
  });
}

void gd_table_free(gd_table* t) { delete t; }

gd_status gd_table_rows(const gd_table* t, size_t* rows) {
  return guarded([&] {
    need(t, "table");
    need(rows, "output");
    *rows = t->value.rows.size();
  });
}

gd_status gd_table_render(const gd_table* t, gd_format format, int digits, char** out) {
  return guarded([&] {
    need(t, "table");
    need(out, "output");
    switch (format) {
      case GD_FORMAT_CSV: *out = give(figure_csv(t->value)); return;
      case GD_FORMAT_SVG: *out = give(figure_svg(t->value)); return;
      case GD_FORMAT_MANIFEST: *out = give(run_manifest(t->value, digits)); return;
    }
    fail(ErrorKind::invalid_argument, "unknown format");
  });
}

gd_status gd_table_write(const gd_table* t, gd_format format, const char* path) {
  return guarded([&] {
    need(t, "table");
    need(path, "path");
    if (format == GD_FORMAT_MANIFEST) {
      require(!t->value.rows.empty(), "manifest needs a nonempty table");
      std::ofstream f(path, std::ios::binary);
      if (!f) fail(ErrorKind::io_failure, std::string("cannot open '") + path + "' for writing");
      f << run_manifest(t->value);
      f.flush();
      if (!f) fail(ErrorKind::io_failure, std::string("failed writing '") + path + "'");
      return;
    }
    emit_figure(t->value, format == GD_FORMAT_SVG ? FigureFormat::svg : FigureFormat::csv, path);
  });
}

gd_status gd_table_fit_truncation(const gd_table* t, double* slope) {
  return guarded([&] {
    need(t, "table");
    need(slope, "output");
    *slope = fit_truncation_rate(t->value);
  });
}

gd_status gd_table_fit_quadrature(const gd_table* t, double* slope) {
  return guarded([&] {
    need(t, "table");
    need(slope, "output");
    *slope = fit_quadrature_rate(t->value);
  });
}

gd_status gd_table_tail_chain(const gd_table* t, int digits, char** out) {
  return guarded([&] {
    need(t, "table");
    need(out, "output");
    std::ostringstream s;
    s << "a,k,c1,c1_proof,err_quad,tight_sum,k_sum,bound,status\n";
    if (!t->value.rows.empty()) {
      const Real c1 = t->value.c1_fit ? *t->value.c1_fit : fit_c1(t->value);
      for (const auto& row : t->value.rows) {
        const TailChainReport r = tail_chain(row.a, row.k, t->value.b, c1, row.err_quad);
        s << r.a.to_decimal(digits) << ',' << r.k << ',' << r.c1.to_decimal(digits) << ','
          << r.c1_proof.to_decimal(digits) << ',' << r.err_quad.to_decimal(digits) << ','
          << r.tight_sum.to_decimal(digits) << ',' << (r.k_sum ? r.k_sum->to_decimal(digits) : "inf") << ','
          << r.bound.to_decimal(digits) << ',' << to_string(r.status) << '\n';
      }
    }
    *out = give(s.str());
  });
}

gd_status gd_superflat_build(const char* a, unsigned long bits, gd_sizing sizing, gd_mixture** out) {
  return guarded([&] {
    need(out, "output");
    *out = new gd_mixture{build_superflat(parse_real(a, bits_of(bits)), sizing_of(sizing))};
  });
}

void gd_mixture_free(gd_mixture* m) { delete m; }

gd_status gd_mixture_csv(const gd_mixture* m, int digits, char** out) {
  return guarded([&] {
    need(m, "mixture");
    need(out, "output");
    *out = give(to_csv(m->value, digits));
  });
}

gd_status gd_mixture_certificate(const gd_mixture* m, size_t n_samples, int digits, char** out) {
  return guarded([&] {
    need(m, "mixture");
    need(out, "output");
    require(n_samples >= 64, "need at least 64 samples");
    ScanOptions opts;
    opts.n_samples = n_samples;
    const FlatnessCertificate c = flatness_certificate(m->value, opts);
    std::ostringstream s;
    s << "a=" << c.a.to_decimal(digits) << '\n';
    s << "k=" << m->value.atoms.size() << '\n';
    s << "B_tilt=" << c.b_tilt.to_decimal(digits) << '\n';
    s << "eps2=" << c.eps2.to_decimal(digits) << '\n';
    const Real scale = sqrt(ldexp(pi(c.b_tilt.precision()), 1)) * c.b_tilt;
    for (std::size_t i = 0; i < c.direct_sups.size(); ++i) {
      const auto& [n, sup] = c.direct_sups[i];
      s << "n=" << n << " direct_sup=" << sup.to_decimal(digits)
        << " scaled=" << (sup * scale).to_decimal(digits)
        << " bound=" << c.deriv_bounds[n - 1].second.to_decimal(digits) << '\n';
    }
    *out = give(s.str());
  });
}

gd_status gd_verify(uint64_t seed, char** report, int* all_passed) {
  return guarded([&] {
    need(report, "output");
    need(all_passed, "output");
    const VerifyReport r = run_verify(seed);
    std::ostringstream s;
    for (const auto& c : r.checks) {
      s << (c.passed ? "PASS " : "FAIL ") << c.module << " | " << c.name << " | " << c.detail << '\n';
    }
    *report = give(s.str());
    *all_passed = r.all_passed();
  });
}

}  // extern "C"
