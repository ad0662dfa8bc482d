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
#include <random>

#include "doctest.h"
#include "pmecc/core/construction.hpp"
#include "pmecc/core/error.hpp"
#include "pmecc/core/jet.hpp"
#include "pmecc/core/poly.hpp"
#include "pmecc/core/rate.hpp"

using namespace pmecc;

namespace {

Poly mono(std::vector<int> e, Rational c) { return Poly::monomial(MultiIndex(std::move(e)), Surd(c)); }

MultiIndex idx(std::vector<int> e) { return MultiIndex(std::move(e)); }

std::vector<Rational> origin3() { return std::vector<Rational>(3, Rational(0)); }

Poly random_cubic(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-4, 4);
  Poly p(n);
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; i + j <= 3; ++j)
      for (int k = 0; i + j + k <= 3; ++k) p.add_term(idx({i, j, k}), Surd(Rational(c(rng), 2)));
  return p;
}

}  // namespace

TEST_CASE("derivatives of monomials") {
  const Poly d = derive(mono({4, 0, 0}, 1), idx({2, 0, 0}));
  CHECK(d == mono({2, 0, 0}, 12));
  CHECK(derive(Poly::constant(3, Surd(1)), idx({1, 0, 0})).is_zero());
  CHECK(derive(Poly::constant(3, Surd(1)), idx({0, 2, 1})).is_zero());
  CHECK(derive(mono({1, 2, 0}, 1), idx({1, 2, 0})) == Poly::constant(3, Surd(2)));
}

TEST_CASE("polynomial text round trip") {
  ConstructionParams p;
  p.alpha = 0.75;
  p.family = Family::kCase2;
  p.steepness = 2;
  const Poly w = build_family(p);
  CHECK(parse_poly(format_poly(w)) == w);
  CHECK_THROWS_AS(parse_poly("dim=2 s2=none\n1 0 : x\n"), Error);
}

TEST_CASE("jet of the case 1 family at the origin") {
  ConstructionParams p;
  p.steepness = 5;
  const Jet<Surd> j = jet_from_poly(build_family(p), origin3());
  CHECK(j.coefficient(idx({0, 0, 0})) == Surd(1));
  CHECK(j.coefficient(idx({1, 0, 0})) == Surd(5));
}

TEST_CASE("jet of the zero polynomial") {
  const Jet<Surd> j = jet_from_poly(Poly(3), std::vector<Rational>{0, 1, 0});
  for (std::size_t k = 0; k < j.size(); ++k) CHECK(j.coefficient_at(k).is_zero());
}

TEST_CASE("case 2 quartic coefficient") {
  ConstructionParams p;
  p.alpha = 0.75;
  p.family = Family::kCase2;
  p.steepness = 2;
  const Jet<Surd> j = jet_from_poly(build_family(p), origin3());
  CHECK(j.coefficient(idx({4, 0, 0})) == Surd(Rational(-1, 48)));
  CHECK(j.partial(idx({4, 0, 0})) == Surd(Rational(-1, 2)));
}

TEST_CASE("jet products match polynomial products") {
  const Jet<Surd> x = jet_from_poly(mono({1, 0, 0}, 1), origin3());
  CHECK((x * x).coefficient(idx({2, 0, 0})) == Surd(1));

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const Poly p = random_cubic(3, rng), q = random_cubic(3, rng);
    const std::vector<Rational> x0 = {Rational(1, 3), Rational(-1, 2), Rational(2)};
    const Jet<Surd> lhs = jet_from_poly(p * q, x0);
    const Jet<Surd> rhs = jet_from_poly(p, x0) * jet_from_poly(q, x0);
    for (std::size_t k = 0; k < lhs.size(); ++k) CHECK(lhs.coefficient_at(k) == rhs.coefficient_at(k));
  }
}

TEST_CASE("jet scaling is termwise") {
  ConstructionParams p;
  p.steepness = 3;
  const Jet<double> j = jet_from_poly(build_family(p), std::vector<double>{0.1, 0.2, -0.1});
  const Jet<double> s = jet_scale(j, 1.5);
  for (std::size_t k = 0; k < j.size(); ++k) CHECK(s.coefficient_at(k) == doctest::Approx(1.5 * j.coefficient_at(k)));
}

TEST_CASE("jet powers and exponential") {
  const std::vector<double> o = {0.0, 0.0};
  const Jet<double> c = Jet<double>::constant(2, o, 3.0);
  const Jet<double> c2 = jet_power(c, 2);
  CHECK(c2.value() == doctest::Approx(9));
  for (std::size_t k = 1; k < c2.size(); ++k) CHECK(c2.coefficient_at(k) == 0);

  const Jet<double> one_plus_x = Jet<double>::constant(2, o, 1.0) + Jet<double>::coordinate(2, o, 0, 0.0);
  const Jet<double> r = jet_power(one_plus_x, 0.5);
  const double binom[] = {1, 0.5, -1.0 / 8, 1.0 / 16, -5.0 / 128};
  for (int k = 0; k <= 4; ++k) CHECK(r.coefficient(MultiIndex({k, 0})) == doctest::Approx(binom[k]));

  const Jet<double> e = jet_exp(Jet<double>::coordinate(2, o, 0, 0.0));
  const double ser[] = {1, 1, 0.5, 1.0 / 6, 1.0 / 24};
  for (int k = 0; k <= 4; ++k) CHECK(e.coefficient(MultiIndex({k, 0})) == doctest::Approx(ser[k]));
}

TEST_CASE("jets at different base points do not mix") {
  const Jet<double> a = Jet<double>::constant(2, {0.0, 0.0}, 1.0);
  const Jet<double> b = Jet<double>::constant(2, {0.0, 1.0}, 1.0);
  CHECK_THROWS_AS(a + b, Error);
  const Jet<double> c = Jet<double>::constant(3, {0.0, 0.0, 0.0}, 1.0);
  CHECK_THROWS_AS(a * c, Error);
}

TEST_CASE("rate oracle at the origin configurations") {
  ConstructionParams p;
  p.steepness = 5;
  const Jet<double> j1 = jet_from_poly(build_family(p), std::vector<double>(3, 0.0));
  CHECK(std::fabs(w11_rate_oracle(j1, 1, 2)) < 1e-12);

  const Jet<double> c = Jet<double>::constant(3, std::vector<double>(3, 0.0), 2.5);
  CHECK(w11_rate_oracle(c, 0.3, 1.7) == 0);

  p.alpha = 0.75;
  p.family = Family::kCase2;
  p.steepness = 2;
  const Jet<double> j2 = jet_from_poly(build_family(p), std::vector<double>(3, 0.0));
  CHECK(w11_rate_oracle(j2, 0.75, 2) == doctest::Approx(2.4453125).epsilon(1e-12));
}
