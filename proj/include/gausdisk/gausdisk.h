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

/* C interface to the gausdisk library. Objects are opaque handles released
 * with their *_free function. Every call returns a gd_status; on failure
 * gd_last_error() describes the most recent error on the calling thread.
 * Strings returned through char** are owned by the caller and released with
 * gd_string_free(). Numbers cross the boundary as decimal text to keep full
 * precision. */

#ifndef GAUSDISK_H
#define GAUSDISK_H

#include <stddef.h>
#include <stdint.h>

#if defined(GAUSDISK_BUILDING_LIBRARY)
#define GD_API __attribute__((visibility("default")))
#else
#define GD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gd_status {
  GD_OK = 0,
  GD_ERR_INVALID_ARGUMENT = 1,
  GD_ERR_PRECISION = 2,
  GD_ERR_CONVERGENCE = 3,
  GD_ERR_SUPPORT = 4,
  GD_ERR_INVARIANT = 5,
  GD_ERR_INSUFFICIENT_DATA = 6,
  GD_ERR_IO = 7,
  GD_ERR_INTERNAL = 8
} gd_status;

typedef enum gd_sizing { GD_SIZING_STANDARD = 0, GD_SIZING_WIDEST = 1 } gd_sizing;
typedef enum gd_format { GD_FORMAT_CSV = 0, GD_FORMAT_SVG = 1, GD_FORMAT_MANIFEST = 2 } gd_format;

typedef struct gd_measure gd_measure;
typedef struct gd_table gd_table;
typedef struct gd_mixture gd_mixture;

GD_API const char* gd_last_error(void);
GD_API const char* gd_status_name(gd_status status);
GD_API void gd_string_free(char* s);

/* Working precision for a measure on [-support, support] and a disk of the
 * given radius. */
GD_API gd_status gd_policy_bits(double support, double radius, unsigned long* bits);

/* digits <= 0 prints every digit. */
GD_API gd_status gd_rule_csv(unsigned k, unsigned long bits, int digits, char** out);

/* descriptor: "gaussian", "rule:K", "support:A" or "support:A:widest",
 * "truncated:A", "truncated a=<serialized>", "point:X", "file:PATH"
 * (location,mass CSV). */
GD_API gd_status gd_measure_parse(const char* descriptor, unsigned long bits, gd_measure** out);
GD_API void gd_measure_free(gd_measure* m);
GD_API gd_status gd_measure_describe(const gd_measure* m, char** out);
/* *bounded = 0 for N(0,1). */
GD_API gd_status gd_measure_support(const gd_measure* m, double* support, int* bounded);

/* Laplace transform at re + i im; both parts decimal text. */
GD_API gd_status gd_laplace(const gd_measure* m, const char* re, const char* im, unsigned long bits,
                            int digits, char** re_out, char** im_out);
GD_API gd_status gd_char_fn(const gd_measure* m, const char* t, unsigned long bits, int digits,
                            char** re_out, char** im_out);

/* CSV header plus one row: radius,sup,witness_re,witness_im,samples,iters. */
GD_API gd_status gd_supdisk(const gd_measure* m, const char* radius, unsigned long bits,
                            size_t n_samples, int digits, char** out);

GD_API gd_status gd_figure_run(const double* grid, size_t n, double b, gd_sizing sizing,
                               size_t n_samples, unsigned extra_bits, gd_table** out);
GD_API void gd_table_free(gd_table* t);
GD_API gd_status gd_table_rows(const gd_table* t, size_t* rows);
GD_API gd_status gd_table_render(const gd_table* t, gd_format format, int digits, char** out);
GD_API gd_status gd_table_write(const gd_table* t, gd_format format, const char* path);
GD_API gd_status gd_table_fit_truncation(const gd_table* t, double* slope);
GD_API gd_status gd_table_fit_quadrature(const gd_table* t, double* slope);
/* Per-row tail chain as CSV:
 * a,k,c1,c1_proof,err_quad,tight_sum,k_sum,bound,status. */
GD_API gd_status gd_table_tail_chain(const gd_table* t, int digits, char** out);

GD_API gd_status gd_superflat_build(const char* a, unsigned long bits, gd_sizing sizing,
                                    gd_mixture** out);
GD_API void gd_mixture_free(gd_mixture* m);
GD_API gd_status gd_mixture_csv(const gd_mixture* m, int digits, char** out);
/* key=value lines; fails with GD_ERR_INVARIANT if a derivative bound breaks. */
GD_API gd_status gd_mixture_certificate(const gd_mixture* m, size_t n_samples, int digits, char** out);

/* One line per check: PASS|FAIL module name detail. */
GD_API gd_status gd_verify(uint64_t seed, char** report, int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* GAUSDISK_H */
