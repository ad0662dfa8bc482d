// Copyright 2026 The pmecc Authors
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

/* C interface to the pmecc toolkit: local construction, verification,
 * assembly of global initial data and evolution of the pressure equation.
 *
 * Every call returns a pmecc_status. On failure pmecc_last_error() holds a
 * message for the calling thread. Objects are opaque and released with the
 * matching *_free function; strings returned through char** belong to the
 * caller and are released with pmecc_string_free. */

#ifndef PMECC_PMECC_H
#define PMECC_PMECC_H

#include <stddef.h>
#include <stdint.h>

#if defined(PMECC_BUILDING_LIBRARY)
#define PMECC_API __attribute__((visibility("default")))
#else
#define PMECC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pmecc_status {
  PMECC_OK = 0,
  PMECC_ERR_INVALID_ARGUMENT = 1,
  PMECC_ERR_DIMENSION_MISMATCH = 2,
  PMECC_ERR_BASE_POINT_MISMATCH = 3,
  PMECC_ERR_FAMILY_RANGE = 4,
  PMECC_ERR_DOMAIN = 5,
  PMECC_ERR_SEARCH_EXHAUSTED = 6,
  PMECC_ERR_CONSTRUCTION_INVALID = 7,
  PMECC_ERR_INTERNAL_INCONSISTENCY = 8,
  PMECC_ERR_ASSEMBLY_INFEASIBLE = 9,
  PMECC_ERR_PROFILE_CONSTRUCTION = 10,
  PMECC_ERR_RESOLUTION_TOO_SMALL = 11,
  PMECC_ERR_STABILITY = 12,
  PMECC_ERR_ORIGIN_OUTSIDE_SUPPORT = 13,
  PMECC_ERR_PARSE = 14,
  PMECC_ERR_IO = 15,
  PMECC_ERR_UNKNOWN = 99
} pmecc_status;

typedef enum pmecc_family { PMECC_CASE1 = 1, PMECC_CASE2 = 2 } pmecc_family;

typedef struct pmecc_params {
  double alpha;
  double m;
  int n;
  pmecc_family family;
  double steepness; /* a for case 1, b for case 2 */
  double rho;       /* 0 until verified */
  double amplitude; /* 0 until assembled */
} pmecc_params;

typedef struct pmecc_poly pmecc_poly;
typedef struct pmecc_verification pmecc_verification;
typedef struct pmecc_bundle pmecc_bundle;
typedef struct pmecc_field pmecc_field;
typedef struct pmecc_series pmecc_series;

PMECC_API const char* pmecc_version(void);
PMECC_API const char* pmecc_status_name(pmecc_status s);
PMECC_API const char* pmecc_last_error(void);
PMECC_API void pmecc_string_free(char* s);

/* ---- polynomials ---- */
PMECC_API pmecc_status pmecc_poly_parse(const char* text, pmecc_poly** out);
PMECC_API pmecc_status pmecc_poly_format(const pmecc_poly* p, char** out);
PMECC_API pmecc_status pmecc_poly_dimension(const pmecc_poly* p, int* out);
PMECC_API pmecc_status pmecc_poly_eval(const pmecc_poly* p, const double* x, double* out);
/* d/dt w_11 at x0 from the jet of w via the pressure equation. */
PMECC_API pmecc_status pmecc_rate_oracle(const pmecc_poly* w, const double* x0, double alpha,
                                         double m, double* out);
PMECC_API void pmecc_poly_free(pmecc_poly* p);

/* ---- construction ---- */
PMECC_API pmecc_status pmecc_family_for_alpha(double alpha, pmecc_family* out);
PMECC_API pmecc_status pmecc_params_init(double alpha, double m, int n, pmecc_params* out);
PMECC_API pmecc_status pmecc_solve_steepness(double alpha, double m, int n, double margin,
                                             double* out);
PMECC_API pmecc_status pmecc_build_family(const pmecc_params* p, pmecc_poly** out);
/* Closed-form origin rate; breakdown (optional) receives the term table. */
PMECC_API pmecc_status pmecc_origin_rate(const pmecc_params* p, double* total, char** breakdown);
PMECC_API pmecc_status pmecc_params_format(const pmecc_params* p, char** out);
PMECC_API pmecc_status pmecc_params_parse(const char* text, pmecc_params* out);

/* ---- verification ---- */
/* rho <= 0 runs the halving search from 1/2. */
PMECC_API pmecc_status pmecc_verify(const pmecc_params* p, const pmecc_poly* w, uint64_t seed,
                                    int threads, double rho, pmecc_verification** out);
PMECC_API pmecc_status pmecc_verification_passed(const pmecc_verification* v, int* out);
PMECC_API pmecc_status pmecc_verification_rho(const pmecc_verification* v, double* out);
PMECC_API pmecc_status pmecc_verification_report(const pmecc_verification* v, char** out);
PMECC_API void pmecc_verification_free(pmecc_verification* v);

/* ---- assembly ---- */
/* glue: "auto", "literal" or "anchored". p->rho must be set. log receives
 * the driver's decisions and report the key-value assembly report (both optional). */
PMECC_API pmecc_status pmecc_assemble(const pmecc_params* p, const pmecc_poly* w, const char* glue,
                                      uint64_t seed, int threads, pmecc_bundle** out, char** report,
                                      char** log);
PMECC_API pmecc_status pmecc_bundle_parse(const char* manifest, pmecc_bundle** out);
PMECC_API pmecc_status pmecc_bundle_format(const pmecc_bundle* b, char** out);
PMECC_API pmecc_status pmecc_bundle_params(const pmecc_bundle* b, pmecc_params* out);
PMECC_API pmecc_status pmecc_bundle_origin_rate(const pmecc_bundle* b, double* out);
/* Re-runs the sampled checks on a loaded bundle. */
PMECC_API pmecc_status pmecc_bundle_inspect(const pmecc_bundle* b, uint64_t seed, char** report,
                                            int* passed);
PMECC_API pmecc_status pmecc_bundle_v0(const pmecc_bundle* b, const double* x, double* out);
PMECC_API void pmecc_bundle_free(pmecc_bundle* b);

/* ---- solver ---- */
typedef struct pmecc_evolve_options {
  double alpha;
  double m;
  double horizon;
  int probe_stride;
  int threads;
  const char* snapshot_dir; /* NULL: no snapshots */
  int snapshot_stride;
} pmecc_evolve_options;

PMECC_API pmecc_status pmecc_discretize(const pmecc_bundle* b, int res, int threads,
                                        pmecc_field** out);
/* Zero field on [-half_width, half_width]^n. */
PMECC_API pmecc_status pmecc_field_zero(int n, double half_width, int res, pmecc_field** out);
PMECC_API pmecc_status pmecc_field_info(const pmecc_field* f, int* n, int* res, double* h,
                                        double* t);
PMECC_API pmecc_status pmecc_field_origin_value(const pmecc_field* f, double* out);
PMECC_API pmecc_status pmecc_field_admissible_dt(const pmecc_field* f, double m, double* out);
/* PMECC_ERR_STABILITY leaves the field untouched; admissible (optional) gets the bound. */
PMECC_API pmecc_status pmecc_field_step(pmecc_field* f, double m, double dt, int threads,
                                        double* admissible);
PMECC_API pmecc_status pmecc_field_probe(const pmecc_field* f, double alpha, double* lambda1,
                                         double* w11);
PMECC_API pmecc_status pmecc_field_write_snapshot(const pmecc_field* f, const char* path);
PMECC_API void pmecc_field_free(pmecc_field* f);

PMECC_API pmecc_status pmecc_evolve(const pmecc_field* initial, const pmecc_evolve_options* opt,
                                    pmecc_series** out);
PMECC_API pmecc_status pmecc_series_csv(const pmecc_series* s, char** out);
PMECC_API pmecc_status pmecc_series_summary(const pmecc_series* s, char** out);
PMECC_API pmecc_status pmecc_series_detection(const pmecc_series* s, int* detected, int* local,
                                              double* t_star, double* measured_rate);
PMECC_API void pmecc_series_free(pmecc_series* s);

#ifdef __cplusplus
}
#endif

#endif /* PMECC_PMECC_H */
