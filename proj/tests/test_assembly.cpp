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

#include <cmath>

#include "doctest.h"
#include "pmecc/core/assembly.hpp"
#include "pmecc/core/construction.hpp"
#include "pmecc/core/error.hpp"
#include "pmecc/core/linalg.hpp"
#include "pmecc/core/verifier.hpp"

using namespace pmecc;

namespace {

ConstructionParams verified(double alpha, double s) {
  ConstructionParams p;
  p.alpha = alpha;
  p.family = family_for_alpha(alpha);
  p.steepness = s;
  p.rho = verify(p, build_family(p)).c2.rho;
  return p;
}

}  // namespace

TEST_CASE("cutoff") {
  const Cutoff c = build_cutoff(1);
  CHECK(c.value(0) == 1);
  CHECK(c.value(0.5L) == 1);
  CHECK(c.value(0.9L) == 0);
  CHECK(std::isfinite(c.c_psi));
  CHECK(c.c_psi > 0);
  const Cutoff fine = build_cutoff(1, 20000);
  CHECK(std::fabs(fine.c_psi / c.c_psi - 1) < 0.01);
}

TEST_CASE("radial profiles") {
  const RadialProfile one = build_profile(1, 1);
  CHECK(static_cast<double>(one.value(0.25L)) == doctest::Approx(7.0 / 8));
  CHECK(static_cast<double>(one.value(0.75L)) == doctest::Approx(0.4375));

  const RadialProfile quarter = build_profile(0.25, 1);
  CHECK(static_cast<double>(quarter.value(0.5L)) == doctest::Approx(std::pow(0.5, 0.25)).epsilon(1e-12));
  CHECK(quarter.plateau_value == doctest::Approx(17.0 / 16 * std::pow(0.5, 0.25)).epsilon(1e-12));

  const RadialProfile zero = build_profile(0, 1);
  CHECK(static_cast<double>(zero.value(0.5L)) == doctest::Approx(std::log(0.5)).epsilon(1e-12));
}

TEST_CASE("alpha = 1 bundle") {
  const ConstructionParams p = verified(1, 10);
  AssemblyReport r;
  const AssemblyBundle b = assemble(p, build_family(p), {}, &r);
  CHECK(r.passed);
  const double rho = b.rho();
  const long double x[3] = {rho / 8, -rho / 16, rho / 32};
  std::vector<long double> xv(x, x + 3);
  const long double expect = b.amplitude * 7.0L * rho * rho / 8 + evaluate(b.w, xv);
  CHECK(static_cast<double>(b.w_tilde(x)) == doctest::Approx(static_cast<double>(expect)).epsilon(1e-12));

  const std::vector<double> zero(3, 0.0);
  const auto ev = jacobi_eigenvalues(b.w_tilde_hessian(zero.data()));
  int zeros = 0, negatives = 0;
  for (double e : ev) {
    if (std::fabs(e) < 1e-9) ++zeros;
    else if (e < 0) ++negatives;
  }
  CHECK(zeros == 1);
  CHECK(negatives == 2);
  CHECK(r.boundary_rel_error < 1e-6);
  CHECK(r.boundary_closed_form_min == doctest::Approx(2 * b.amplitude * rho));
}

TEST_CASE("alpha = 0 bundle keeps amplitude one") {
  const ConstructionParams p = verified(0, solve_steepness(0, 2, 3));
  AssemblyReport r;
  const AssemblyBundle b = assemble(p, build_family(p), {}, &r);
  CHECK(r.passed);
  CHECK(b.amplitude == 1);
  CHECK(b.psi_identity);
  CHECK(r.boundary_gradient_floor > 0);
}

TEST_CASE("fractional bundle boundary gradient") {
  const ConstructionParams p = verified(0.25, solve_steepness(0.25, 2, 3));
  AssemblyReport r;
  const AssemblyBundle b = assemble(p, build_family(p), {}, &r);
  CHECK(r.passed);
  CHECK(r.boundary_closed_form_min == doctest::Approx(std::pow(b.amplitude, 4.0)));
  CHECK(r.boundary_rel_error < 1e-6);
}

TEST_CASE("manifest round trip") {
  const ConstructionParams p = verified(0.75, solve_steepness(0.75, 2, 3));
  const AutoAssemblyResult r = assemble_driver(p, build_family(p), "anchored", {}, {});
  const AssemblyBundle back = parse_manifest(format_manifest(r.bundle));
  CHECK(format_manifest(back) == format_manifest(r.bundle));
  const long double x[3] = {0.001L * p.rho, 0.3L * p.rho, -0.2L * p.rho};
  CHECK(back.v0(x) == r.bundle.v0(x));
  CHECK_THROWS_AS(parse_manifest("format=something-else\n"), Error);
}

TEST_CASE("scaling to other radii keeps the verdicts") {
  const ConstructionParams p = verified(1, 10);
  const AssemblyBundle b = assemble(p, build_family(p), {}, nullptr);
  for (double target : {0.25, 0.5, 1.0}) {
    const AssemblyBundle s = rescale_bundle(b, target);
    const AssemblyReport r = inspect_bundle(s, {});
    CHECK(r.passed);
    CHECK(r.origin_zero_eigenvalues == 1);
  }
}
