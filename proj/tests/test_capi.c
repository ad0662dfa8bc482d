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

/* Exercises the C interface from plain C. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "pmecc/pmecc.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static void test_errors(void) {
  pmecc_family fam;
  EXPECT(pmecc_family_for_alpha(0.5, &fam) == PMECC_ERR_FAMILY_RANGE);
  EXPECT(strstr(pmecc_last_error(), "1/2") != NULL);
  EXPECT(pmecc_family_for_alpha(0.75, &fam) == PMECC_OK);
  EXPECT(fam == PMECC_CASE2);
  EXPECT(strcmp(pmecc_status_name(PMECC_ERR_PARSE), "parse") == 0);

  pmecc_poly* p = NULL;
  EXPECT(pmecc_poly_parse("not a polynomial", &p) == PMECC_ERR_PARSE);
  EXPECT(p == NULL);
  EXPECT(pmecc_poly_parse(NULL, &p) == PMECC_ERR_INVALID_ARGUMENT);
}

static void test_pipeline(void) {
  pmecc_params params;
  EXPECT(pmecc_params_init(1, 2, 3, &params) == PMECC_OK);
  params.steepness = 10;

  double rate = 0;
  char* breakdown = NULL;
  EXPECT(pmecc_origin_rate(&params, &rate, &breakdown) == PMECC_OK);
  EXPECT(fabs(rate - 40) < 1e-12);
  pmecc_string_free(breakdown);

  pmecc_poly* w = NULL;
  EXPECT(pmecc_build_family(&params, &w) == PMECC_OK);
  int dim = 0;
  pmecc_poly_dimension(w, &dim);
  EXPECT(dim == 3);
  const double origin[3] = {0, 0, 0};
  double value = 0, oracle = 0;
  pmecc_poly_eval(w, origin, &value);
  EXPECT(value == 1);
  pmecc_rate_oracle(w, origin, 1, 2, &oracle);
  EXPECT(fabs(oracle - 40) < 1e-9);

  pmecc_verification* v = NULL;
  EXPECT(pmecc_verify(&params, w, 0, 1, 0, &v) == PMECC_OK);
  int passed = 0;
  pmecc_verification_passed(v, &passed);
  EXPECT(passed == 1);
  pmecc_verification_rho(v, &params.rho);
  EXPECT(params.rho > 0 && params.rho <= 0.5);
  pmecc_verification_free(v);

  pmecc_bundle* b = NULL;
  char* report = NULL;
  EXPECT(pmecc_assemble(&params, w, "anchored", 0, 1, &b, &report, NULL) == PMECC_OK);
  EXPECT(strstr(report, "assembly=pass") != NULL);
  pmecc_string_free(report);

  char* manifest = NULL;
  EXPECT(pmecc_bundle_format(b, &manifest) == PMECC_OK);
  pmecc_bundle* back = NULL;
  EXPECT(pmecc_bundle_parse(manifest, &back) == PMECC_OK);
  pmecc_string_free(manifest);
  double v0a = 0, v0b = 0;
  pmecc_bundle_v0(b, origin, &v0a);
  pmecc_bundle_v0(back, origin, &v0b);
  EXPECT(v0a == v0b && v0a > 0);
  pmecc_bundle_free(back);

  pmecc_field* f = NULL;
  EXPECT(pmecc_discretize(b, 31, 1, &f) == PMECC_ERR_RESOLUTION_TOO_SMALL);
  EXPECT(pmecc_discretize(b, 33, 1, &f) == PMECC_OK);
  double dt = 0, adm = 0;
  pmecc_field_admissible_dt(f, 2, &dt);
  EXPECT(dt > 0);
  EXPECT(pmecc_field_step(f, 2, 3 * dt, 1, &adm) == PMECC_ERR_STABILITY);
  EXPECT(fabs(adm - dt) <= 1e-12 * dt);
  double lambda1 = 1;
  EXPECT(pmecc_field_probe(f, 1, &lambda1, NULL) == PMECC_OK);

  pmecc_evolve_options opt = {1, 2, 5 * dt, 1, 1, NULL, 0};
  pmecc_series* s = NULL;
  EXPECT(pmecc_evolve(f, &opt, &s) == PMECC_OK);
  char* csv = NULL;
  pmecc_series_csv(s, &csv);
  EXPECT(strncmp(csv, "t,w11,lambda1,max_v,mass_proxy,clamp_norm", 41) == 0);
  pmecc_string_free(csv);
  double measured = 0;
  pmecc_series_detection(s, NULL, NULL, NULL, &measured);
  EXPECT(fabs(measured - 40) < 10);
  pmecc_series_free(s);
  pmecc_field_free(f);
  pmecc_bundle_free(b);
  pmecc_poly_free(w);
}

int main(void) {
  test_errors();
  test_pipeline();
  if (failures) {
    fprintf(stderr, "%d failure(s)\n", failures);
    return 1;
  }
  printf("c api: ok (%s)\n", pmecc_version());
  return 0;
}
