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

#include "doctest.h"
#include "pmecc/core/construction.hpp"
#include "pmecc/core/error.hpp"
#include "pmecc/core/verifier.hpp"

using namespace pmecc;

namespace {

ConstructionParams make(double alpha, double m, int n, double s) {
  ConstructionParams p;
  p.alpha = alpha;
  p.m = m;
  p.n = n;
  p.family = family_for_alpha(alpha);
  p.steepness = s;
  return p;
}

Poly sq(int n, int var) { return Poly::monomial(MultiIndex::unit(n, var, 2), Surd(1)); }

Poly norm2(int n, long sign) {
  Poly p(n);
  for (int i = 0; i < n; ++i) p += sq(n, i) * Surd(sign);
  return p;
}

}  // namespace

TEST_CASE("condition 1") {
  const Condition1Result c1 = check_condition1(build_family(make(1, 2, 3, 5)));
  CHECK(c1.pass);
  const Condition1Result c2 = check_condition1(build_family(make(0.75, 2, 2, 2)));
  CHECK(c2.pass);
  CHECK_FALSE(check_condition1(norm2(3, -1)).pass);
}

TEST_CASE("condition 2 on fixed radii") {
  const Poly w = build_family(make(1, 2, 2, 10));
  CHECK(check_condition2(w, 0.05).pass);
  const Condition2Result far = check_condition2(w, 10);
  CHECK_FALSE(far.pass);
  REQUIRE(far.failing.has_value());
}

TEST_CASE("radius search") {
  const RhoSearchResult r1 = rho_search(build_family(make(1, 2, 3, 10)));
  CHECK(r1.result.pass);
  CHECK(r1.rho <= 0.5);
  const RhoSearchResult r2 = rho_search(build_family(make(0.6, 2, 3, 3)));
  CHECK(r2.result.pass);
  CHECK(r2.rho <= 0.5);
  CHECK_THROWS_AS(rho_search(norm2(2, 1)), Error);
}

TEST_CASE("leading-order minor forms") {
  const Poly w1 = build_family(make(1, 2, 2, 10));
  CHECK(minor_leading_order(w1, 2) == (sq(2, 0) * Surd(24) + sq(2, 1) * Surd(4)));
  CHECK(minor_leading_order(w1, 1) == (sq(2, 0) * Surd(-12) + sq(2, 1) * Surd(-4)));
  // b = 2: 2b^2 (x1^2 / b^2 + x2^2 / 2) = 2 x1^2 + 4 x2^2.
  const Poly w2 = build_family(make(0.75, 2, 2, 2));
  CHECK(minor_leading_order(w2, 2) == (sq(2, 0) * Surd(2) + sq(2, 1) * Surd(4)));
}

TEST_CASE("condition 3") {
  const ConstructionParams good = make(1, 2, 3, 10);
  const Condition3Result r = check_condition3(build_family(good), good);
  CHECK(r.pass);
  CHECK(r.closed_form.total == doctest::Approx(40));
  const ConstructionParams edge = make(1, 2, 3, 5);
  CHECK_FALSE(check_condition3(build_family(edge), edge).pass);
  const ConstructionParams c2 = make(0.75, 2, 3, 2);
  const Condition3Result r2 = check_condition3(build_family(c2), c2);
  CHECK(r2.pass);
  CHECK(r2.closed_form.total == doctest::Approx(2.4453125));
}

TEST_CASE("full verification and report") {
  const ConstructionParams p = make(1, 2, 3, 10);
  const VerificationReport r = verify(p, build_family(p));
  CHECK(r.passed());
  const std::string text = format_verification_report(r);
  CHECK(text.find("overall=pass") != std::string::npos);

  // Flip the sign of the x2^2 term: w22(0) becomes +2.
  Poly bad = build_family(p);
  bad = bad + sq(3, 1) * Surd(2);
  const VerificationReport rb = verify(p, bad);
  CHECK_FALSE(rb.c1.pass);
  CHECK_FALSE(rb.passed());
}

TEST_CASE("sampling is independent of the thread count") {
  const Poly w = build_family(make(0.75, 2, 3, 2));
  SamplingOptions one, four;
  four.threads = 4;
  const Condition2Result a = check_condition2(w, 0.1, one), b = check_condition2(w, 0.1, four);
  CHECK(a.pass == b.pass);
  CHECK(a.margin == b.margin);
  CHECK(a.samples == b.samples);
}
