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
#include "pmecc/core/construction.hpp"
#include "pmecc/core/error.hpp"
#include "pmecc/core/jet.hpp"

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

Surd coef(const Poly& w, std::vector<int> e) { return w.coefficient(MultiIndex(std::move(e))); }

}  // namespace

TEST_CASE("family selection") {
  CHECK(family_for_alpha(1) == Family::kCase1);
  CHECK(family_for_alpha(0) == Family::kCase1);
  CHECK(family_for_alpha(0.25) == Family::kCase1);
  CHECK(family_for_alpha(0.75) == Family::kCase2);
  CHECK_THROWS_AS(family_for_alpha(0.5), Error);
  CHECK_THROWS_AS(family_for_alpha(1.5), Error);
}

TEST_CASE("case 1 coefficients") {
  const Poly w = build_family(make(1, 2, 2, 10));
  CHECK(w.terms().size() == 6);
  CHECK(coef(w, {0, 0}) == Surd(1));
  CHECK(coef(w, {1, 0}) == Surd(10));
  CHECK(coef(w, {4, 0}) == Surd(-1));
  CHECK(coef(w, {1, 2}) == Surd(1));
  CHECK(coef(w, {0, 2}) == Surd(-1));
  CHECK(coef(w, {2, 2}) == Surd(-2));
}

TEST_CASE("case 2 origin derivatives") {
  const Poly w = build_family(make(0.75, 2, 2, 2));
  const Jet<Surd> j = jet_from_poly(w, std::vector<Rational>{0, 0});
  CHECK(j.value() == Surd(1));
  CHECK(j.partial(MultiIndex({0, 2})) == Surd(-8));
  // w_1 = 3 sqrt(3) / 4, i.e. (3/2) sqrt(3/4).
  const Surd w1 = j.partial(MultiIndex({1, 0}));
  CHECK(w1.to_double() == doctest::Approx(3 * std::sqrt(3.0) / 4).epsilon(1e-15));
  CHECK((w1 * w1) == Surd(Rational(27, 16)));
}

TEST_CASE("closed-form origin rates") {
  CHECK(origin_rate(make(0, 2, 2, 2)).total_exact == 0);
  CHECK(origin_rate(make(1, 2, 2, 8)).total_exact == 0);
  CHECK(origin_rate(make(1, 2, 3, 5)).total_exact == 0);
  CHECK(origin_rate(make(1, 2, 3, 10)).total == doctest::Approx(40));
  CHECK(origin_rate(make(0.25, 2, 2, 1)).total_exact == 2);
  const RateBreakdown c2 = origin_rate(make(0.75, 2, 3, 2));
  CHECK(c2.total_exact == Rational(313, 128));
  CHECK(c2.c_alpha_m_exact == Rational(135, 8));
}

TEST_CASE("steepness solver") {
  const double a = solve_steepness(1, 2, 3, 1e-9);
  CHECK(a > 5);
  CHECK(a < 5 * 1.05);  // one step of the search grid
  const double b = solve_steepness(0.75, 2, 3);
  CHECK(b > 1.523);
  CHECK(origin_rate(make(0.75, 2, 3, b)).total > 0);
  CHECK_THROWS_AS(solve_steepness(0.5, 2, 3), Error);
}

TEST_CASE("params text round trip") {
  ConstructionParams p = make(0.75, 3, 4, 2.5);
  p.rho = 0.125;
  const ConstructionParams q = parse_params(format_params(p));
  CHECK(q.alpha == p.alpha);
  CHECK(q.m == p.m);
  CHECK(q.n == p.n);
  CHECK(q.family == p.family);
  CHECK(q.steepness == p.steepness);
  CHECK(q.rho == p.rho);
}
