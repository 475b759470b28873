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

// gausdisk command-line tool. Talks to the library only through its C API.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gausdisk/gausdisk.h"

namespace {

constexpr int exit_config = 2;
constexpr int exit_math = 3;
constexpr int exit_io = 4;

struct Failure {
  int code;
  std::string message;
};

int exit_code(gd_status s) {
  switch (s) {
    case GD_OK: return 0;
    case GD_ERR_INVALID_ARGUMENT:
    case GD_ERR_SUPPORT:
    case GD_ERR_INSUFFICIENT_DATA: return exit_config;
    case GD_ERR_IO: return exit_io;
    default: return exit_math;
  }
}

void check(gd_status s) {
  if (s != GD_OK) throw Failure{exit_code(s), std::string(gd_status_name(s)) + ": " + gd_last_error()};
}

[[noreturn]] void config_error(const std::string& msg) { throw Failure{exit_config, msg}; }

std::string take(char* s) {
  std::string out = s ? s : "";
  gd_string_free(s);
  return out;
}

struct MeasureDeleter {
  void operator()(gd_measure* m) const { gd_measure_free(m); }
};
struct TableDeleter {
  void operator()(gd_table* t) const { gd_table_free(t); }
};
struct MixtureDeleter {
  void operator()(gd_mixture* m) const { gd_mixture_free(m); }
};
using MeasurePtr = std::unique_ptr<gd_measure, MeasureDeleter>;

struct Common {
  std::string precision = "auto";
  int digits = 40;
  bool full = false;
  std::string out;

  int out_digits() const { return full ? 0 : digits; }
};

// Explicit bits, else GAUSDISK_PRECISION, else the policy for (support, radius)
// raised to cover the printed digits.
unsigned long resolve_bits(const Common& c, double support, double radius) {
  std::string text = c.precision;
  if (text == "auto") {
    if (const char* env = std::getenv("GAUSDISK_PRECISION"); env && *env) text = env;
  }
  if (text == "auto") {
    unsigned long bits = 0;
    check(gd_policy_bits(support, radius, &bits));
    if (!c.full) bits = std::max(bits, static_cast<unsigned long>(std::ceil(c.digits * 3.3219280948873623)) + 32);
    return bits;
  }
  char* end = nullptr;
  const unsigned long bits = std::strtoul(text.c_str(), &end, 10);
  if (text.empty() || *end != '\0' || text[0] == '-') config_error("precision must be 'auto' or a bit count");
  if (bits < 64) config_error("precision must be at least 64 bits");
  return bits;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw Failure{exit_io, "cannot open '" + c.out + "' for writing"};
  f << text;
  f.flush();
  if (!f) throw Failure{exit_io, "failed writing '" + c.out + "'"};
}

double number(const std::string& text, const char* what) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || *end != '\0' || !std::isfinite(v)) config_error(std::string("bad ") + what + " '" + text + "'");
  return v;
}

MeasurePtr parse_measure(const std::string& descriptor, unsigned long bits) {
  gd_measure* m = nullptr;
  check(gd_measure_parse(descriptor.c_str(), bits, &m));
  return MeasurePtr(m);
}

double support_of(const std::string& descriptor) {
  const MeasurePtr probe = parse_measure(descriptor, 128);
  double support = 0;
  int bounded = 0;
  check(gd_measure_support(probe.get(), &support, &bounded));
  return bounded ? support : 0.0;
}

std::vector<double> parse_grid(const std::string& descriptor) {
  std::vector<std::string> parts;
  std::stringstream ss(descriptor);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() == 1 && parts[0].find(',') != std::string::npos) {
    std::vector<double> out;
    std::stringstream cs(parts[0]);
    for (std::string v; std::getline(cs, v, ',');) out.push_back(number(v, "grid value"));
    return out;
  }
  if (parts.size() != 3) config_error("grid must be lo:hi:step or a comma list");
  const double lo = number(parts[0], "grid start"), hi = number(parts[1], "grid end");
  const double step = number(parts[2], "grid step");
  if (step <= 0 || hi < lo) config_error("grid needs lo <= hi and step > 0");
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

gd_sizing parse_sizing(const std::string& s) {
  if (s == "standard") return GD_SIZING_STANDARD;
  if (s == "widest") return GD_SIZING_WIDEST;
  config_error("sizing must be 'standard' or 'widest'");
}

// key=value lines become --key value ahead of the command-line arguments,
// so explicit flags win. A `command` key selects the subcommand when none
// is given.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) config_error("--config needs a path");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (!path) return rest;

  std::ifstream in(*path);
  if (!in) throw Failure{exit_io, "cannot read config '" + *path + "'"};
  std::optional<std::string> command;
  std::vector<std::string> from_file;
  std::string line;
  for (int n = 1; std::getline(in, line); ++n) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos) config_error(*path + ":" + std::to_string(n) + ": expected key=value");
    std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    key.erase(key.find_last_not_of(" \t") + 1);
    value.erase(0, value.find_first_not_of(" \t"));
    for (char& ch : key) {
      if (ch == '_') ch = '-';
    }
    if (key == "command") {
      command = value;
    } else if (value == "true" || value == "false") {
      if (value == "true") from_file.push_back("--" + key);
    } else {
      from_file.push_back("--" + key);
      from_file.push_back(value);
    }
  }
  static const char* commands[] = {"rule", "transform", "supdisk", "figure", "superflat", "verify"};
  std::size_t pos = rest.size();
  for (std::size_t i = 0; i < rest.size() && pos == rest.size(); ++i) {
    for (const char* c : commands) {
      if (rest[i] == c) pos = i;
    }
  }
  std::vector<std::string> out;
  if (pos == rest.size()) {
    if (!command) config_error("config gives no command and none was passed");
    out.push_back(*command);
    out.insert(out.end(), from_file.begin(), from_file.end());
    out.insert(out.end(), rest.begin(), rest.end());
  } else {
    out.assign(rest.begin(), rest.begin() + static_cast<long>(pos) + 1);
    out.insert(out.end(), from_file.begin(), from_file.end());
    out.insert(out.end(), rest.begin() + static_cast<long>(pos) + 1, rest.end());
  }
  return out;
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--precision", c.precision, "Binary precision: 'auto' or a bit count >= 64");
  cmd->add_option("--digits", c.digits, "Significant decimal digits in output")->check(CLI::Range(1, 100000));
  cmd->add_flag("--full-precision", c.full, "Print every digit held at the working precision");
  cmd->add_option("--out", c.out, "Output file (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compactly supported approximations of the standard Gaussian on complex disks"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  app.add_option("--config", "key=value file; keys are long option names, plus `command`");

  Common common;

  unsigned rule_k = 0;
  auto* rule = app.add_subcommand("rule", "Gauss-Hermite nodes and weights as CSV");
  rule->add_option("--k", rule_k, "Number of nodes")->required()->check(CLI::Range(1u, 100000u));
  add_common(rule, common);

  std::string t_measure = "gaussian", t_re = "0", t_im = "0", t_t;
  auto* transform = app.add_subcommand("transform", "Laplace and characteristic transforms of a measure");
  transform->add_option("--measure", t_measure,
                        "gaussian | rule:K | support:A[:widest] | truncated:A | point:X | file:PATH");
  transform->add_option("--z", t_re, "Real part of the Laplace argument");
  transform->add_option("--zi", t_im, "Imaginary part of the Laplace argument");
  transform->add_option("--t", t_t, "Also evaluate the characteristic function at t");
  add_common(transform, common);

  std::string s_measure, s_a, s_r = "1";
  std::size_t samples = 1024;
  auto* supdisk = app.add_subcommand("supdisk", "sup of |L(z) - exp(z^2/2)| on |z| = r");
  supdisk->add_option("--measure", s_measure, "Measure descriptor as for transform");
  supdisk->add_option("--a", s_a, "Shorthand for --measure support:A");
  supdisk->add_option("--r", s_r, "Circle radius");
  supdisk->add_option("--samples", samples, "Boundary grid size")->check(CLI::Range(64, 1 << 24));
  add_common(supdisk, common);

  std::string f_grid = "4:10:0.5", f_sizing = "widest", f_svg, f_manifest;
  double f_b = 1.0;
  unsigned f_extra = 0;
  bool f_fits = false, f_tail = false;
  auto* figure = app.add_subcommand("figure", "Truncation versus quadrature error table");
  figure->add_option("--grid", f_grid, "lo:hi:step or a comma list of a values");
  figure->add_option("--b", f_b, "Disk radius");
  figure->add_option("--sizing", f_sizing, "Rule size per a: widest or standard (ceil(a^2/8))");
  figure->add_option("--samples", samples, "Boundary grid size")->check(CLI::Range(64, 1 << 24));
  figure->add_option("--extra-bits", f_extra, "Bits added to each row's policy precision");
  figure->add_option("--svg", f_svg, "Also write the SVG plot here");
  figure->add_option("--manifest", f_manifest, "Also write the JSON run manifest here");
  figure->add_flag("--fits", f_fits, "Print the rate fits");
  figure->add_flag("--tail", f_tail, "Print the tail-bound chain per row");
  add_common(figure, common);

  std::string x_a, x_sizing = "standard";
  auto* superflat = app.add_subcommand("superflat", "Tilted Gauss-Hermite mixture and its flatness certificate");
  superflat->add_option("--a", x_a, "Support half-width, >= 4")->required();
  superflat->add_option("--sizing", x_sizing, "standard or widest");
  superflat->add_option("--samples", samples, "Boundary grid size")->check(CLI::Range(64, 1 << 24));
  add_common(superflat, common);

  std::uint64_t v_seed = 1;
  auto* verify = app.add_subcommand("verify", "Run the invariant suite");
  verify->add_option("--seed", v_seed, "Random seed for sampled checks");

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      app.exit(e);
      return exit_config;
    }

    if (*rule) {
      const double support = std::sqrt(4.0 * rule_k + 2.0);
      char* csv = nullptr;
      check(gd_rule_csv(rule_k, resolve_bits(common, support, 0), common.out_digits(), &csv));
      emit(common, take(csv));
    } else if (*transform) {
      const double z_abs = std::hypot(number(t_re, "z"), number(t_im, "zi"));
      const double t_abs = t_t.empty() ? 0.0 : std::fabs(number(t_t, "t"));
      const unsigned long bits = resolve_bits(common, support_of(t_measure), std::max(z_abs, t_abs));
      const MeasurePtr m = parse_measure(t_measure, bits);
      std::string text = "quantity,arg_re,arg_im,re,im\n";
      char *re = nullptr, *im = nullptr;
      check(gd_laplace(m.get(), t_re.c_str(), t_im.c_str(), bits, common.out_digits(), &re, &im));
      text += "laplace," + t_re + "," + t_im + "," + take(re) + "," + take(im) + "\n";
      if (!t_t.empty()) {
        check(gd_char_fn(m.get(), t_t.c_str(), bits, common.out_digits(), &re, &im));
        text += "char," + t_t + ",0," + take(re) + "," + take(im) + "\n";
      }
      emit(common, text);
    } else if (*supdisk) {
      std::string descriptor = s_measure;
      if (!s_a.empty()) {
        if (!descriptor.empty()) config_error("give either --measure or --a");
        descriptor = "support:" + s_a;
      }
      if (descriptor.empty()) config_error("supdisk needs --measure or --a");
      const double r = number(s_r, "radius");
      if (r <= 0) config_error("radius must be positive");
      const unsigned long bits = resolve_bits(common, support_of(descriptor), r);
      const MeasurePtr m = parse_measure(descriptor, bits);
      char* out = nullptr;
      check(gd_supdisk(m.get(), s_r.c_str(), bits, samples, common.out_digits(), &out));
      emit(common, take(out));
    } else if (*figure) {
      if (common.precision != "auto") config_error("figure sets precision per row; use --extra-bits");
      const std::vector<double> grid = parse_grid(f_grid);
      if (grid.empty()) config_error("empty grid");
      gd_table* raw = nullptr;
      check(gd_figure_run(grid.data(), grid.size(), f_b, parse_sizing(f_sizing), samples, f_extra, &raw));
      const std::unique_ptr<gd_table, TableDeleter> table(raw);
      char* csv = nullptr;
      check(gd_table_render(table.get(), GD_FORMAT_CSV, common.out_digits(), &csv));
      emit(common, take(csv));
      if (!f_svg.empty()) check(gd_table_write(table.get(), GD_FORMAT_SVG, f_svg.c_str()));
      if (!f_manifest.empty()) check(gd_table_write(table.get(), GD_FORMAT_MANIFEST, f_manifest.c_str()));
      if (f_fits) {
        double s = 0;
        gd_status st = gd_table_fit_truncation(table.get(), &s);
        if (st == GD_OK) std::cout << "truncation_slope_vs_a2=" << s << '\n';
        else std::cout << "truncation_slope_vs_a2=n/a (" << gd_last_error() << ")\n";
        st = gd_table_fit_quadrature(table.get(), &s);
        if (st == GD_OK) std::cout << "quadrature_slope_vs_a2loga=" << s << '\n';
        else std::cout << "quadrature_slope_vs_a2loga=n/a (" << gd_last_error() << ")\n";
      }
      if (f_tail) {
        char* tail = nullptr;
        check(gd_table_tail_chain(table.get(), 6, &tail));
        std::cout << take(tail);
      }
    } else if (*superflat) {
      const double a = number(x_a, "a");
      const unsigned long bits = resolve_bits(common, a, 2.0);
      gd_mixture* raw = nullptr;
      check(gd_superflat_build(x_a.c_str(), bits, parse_sizing(x_sizing), &raw));
      const std::unique_ptr<gd_mixture, MixtureDeleter> mix(raw);
      char* csv = nullptr;
      check(gd_mixture_csv(mix.get(), common.out_digits(), &csv));
      const std::string body = take(csv);
      if (!common.out.empty()) emit(common, body);
      char* cert = nullptr;
      check(gd_mixture_certificate(mix.get(), samples, common.full ? 0 : std::min(common.digits, 12), &cert));
      if (common.out.empty()) std::cout << body;
      std::cout << take(cert);
    } else if (*verify) {
      char* report = nullptr;
      int ok = 0;
      check(gd_verify(v_seed, &report, &ok));
      std::cout << take(report);
      std::cout << (ok ? "verify: all checks passed\n" : "verify: FAILED\n");
      return ok ? 0 : exit_math;
    }
  } catch (const Failure& f) {
    std::cerr << "gausdisk: " << f.message << '\n';
    return f.code;
  }
  return 0;
}
