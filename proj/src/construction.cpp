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

#include "pmecc/core/construction.hpp"

#include <cmath>
#include <sstream>

#include "pmecc/core/error.hpp"
#include "pmecc/core/keyvalue.hpp"

namespace pmecc {

const char* family_name(Family f) { return f == Family::kCase1 ? "case1" : "case2"; }

Family parse_family(const std::string& name) {
  if (name == "case1") return Family::kCase1;
  if (name == "case2") return Family::kCase2;
  throw Error(ErrorKind::kParse, "unknown family '" + name + "'");
}

Family family_for_alpha(double alpha) {
  if (!(alpha >= 0 && alpha <= 1)) {
    throw Error(ErrorKind::kFamilyRange, "alpha must lie in [0, 1], got " + format_double(alpha));
  }
  if (alpha == 0.5) {
    throw Error(ErrorKind::kFamilyRange,
                "alpha = 1/2 is excluded: root concavity is preserved, no counterexample exists");
  }
  return (alpha < 0.5 || alpha == 1) ? Family::kCase1 : Family::kCase2;
}

void ConstructionParams::validate() const {
  if (family_for_alpha(alpha) != family) {
    throw Error(ErrorKind::kFamilyRange, std::string("family ") + family_name(family) +
                                             " does not cover alpha = " + format_double(alpha));
  }
  if (!(m > 1) || !std::isfinite(m)) throw Error(ErrorKind::kInvalidArgument, "m must exceed 1");
  if (n < 2) throw Error(ErrorKind::kInvalidArgument, "n must be at least 2");
  if (!(steepness > 0) || !std::isfinite(steepness)) {
    throw Error(ErrorKind::kInvalidArgument, "steepness must be positive");
  }
  if (rho < 0 || amplitude < 0) throw Error(ErrorKind::kInvalidArgument, "negative rho or amplitude");
}

Rational exact_alpha(double alpha) { return snap_rational(alpha); }
Rational exact_m(double m) { return snap_rational(m); }
Rational exact_steepness(double s) { return rational_from_double(s); }

Rational case2_radicand(double alpha) { return Rational(3, 2) - exact_alpha(alpha); }

namespace {

// sqrt(q) as an element of Q(s): rational when q is a perfect square.
Surd exact_sqrt(const Rational& q) {
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
    mpz_class a, b;
    mpz_sqrt(a.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(b.get_mpz_t(), den.get_mpz_t());
    Rational r(a, b);
    r.canonicalize();
    return Surd(r);
  }
  return Surd::root(q);
}

Poly term(int n, std::initializer_list<std::pair<int, int>> powers, const Surd& c) {
  MultiIndex e = MultiIndex::zero(n);
  for (auto [var, p] : powers) e[var] += p;
  return Poly::monomial(e, c);
}

void require_family(double alpha, Family f) {
  if (family_for_alpha(alpha) != f) {
    throw Error(ErrorKind::kFamilyRange, std::string("alpha = ") + format_double(alpha) +
                                             " is outside the range of " + family_name(f));
  }
}

}  // namespace

Poly build_case1(double alpha, int n, double a) {
  require_family(alpha, Family::kCase1);
  if (n < 2) throw Error(ErrorKind::kInvalidArgument, "n must be at least 2");
  if (!(a > 0)) throw Error(ErrorKind::kInvalidArgument, "a must be positive");
  Poly w = Poly::constant(n, Surd(1));
  w += term(n, {{0, 1}}, Surd(exact_steepness(a)));
  w += term(n, {{0, 4}}, Surd(-1));
  for (int i = 1; i < n; ++i) {
    w += term(n, {{0, 1}, {i, 2}}, Surd(1));
    w += term(n, {{i, 2}}, Surd(-1));
    w += term(n, {{0, 2}, {i, 2}}, Surd(-2));
  }
  return w;
}

Poly build_case2(double alpha, int n, double b) {
  require_family(alpha, Family::kCase2);
  if (n < 2) throw Error(ErrorKind::kInvalidArgument, "n must be at least 2");
  if (!(b > 0)) throw Error(ErrorKind::kInvalidArgument, "b must be positive");
  const Rational al = exact_alpha(alpha);
  const Rational bq = exact_steepness(b);
  const Surd s = exact_sqrt(case2_radicand(alpha));
  Poly w = Poly::constant(n, Surd(1));
  w += term(n, {{0, 1}}, s * Surd(Rational(al / (bq * (1 - al)))));
  w += term(n, {{0, 4}}, Surd(Rational(-1 / (12 * bq * bq))));
  for (int i = 1; i < n; ++i) {
    w += term(n, {{i, 2}}, Surd(Rational(-bq * bq)));
    w += term(n, {{0, 1}, {i, 2}}, s * Surd(bq));
    w += term(n, {{0, 2}, {i, 2}}, Surd(-1));
  }
  return w;
}

Poly build_family(const ConstructionParams& p) {
  return p.family == Family::kCase1 ? build_case1(p.alpha, p.n, p.steepness)
                                    : build_case2(p.alpha, p.n, p.steepness);
}

namespace {

void push(RateBreakdown& r, const std::string& name, const Rational& q) {
  r.terms.push_back({name, q, q.get_d()});
}

void finish(RateBreakdown& r, double prefactor = 1) {
  r.prefactor = prefactor;
  r.total_exact = 0;
  for (auto& t : r.terms) {
    r.total_exact += t.exact;
    t.value = prefactor * t.exact.get_d();
  }
  r.total = prefactor * r.total_exact.get_d();
}

}  // namespace

Rational c_alpha_m(double alpha, double m) {
  const Rational al = exact_alpha(alpha);
  const Rational mm = exact_m(m);
  const Rational s2 = Rational(3, 2) - al;
  const Rational ia = 1 / al;
  const Rational K = ia * (1 + (mm - 1) * (1 - al));
  const Rational om = 1 - al;
  return K * (2 - ia) * (ia - 1) * al * al * al * al * s2 * s2 / (om * om * om * om);
}

RateBreakdown origin_rate(const ConstructionParams& p) {
  p.validate();
  const Rational mm = exact_m(p.m);
  const Rational nn1 = p.n - 1;
  const Rational st = exact_steepness(p.steepness);
  RateBreakdown r;
  if (p.family == Family::kCase1) {
    const Rational a = st;
    push(r, "leading", -(24 + 8 * nn1) * (mm - 1));
    if (p.alpha == 0) {
      push(r, "linear", 4 * (mm - 1) * nn1 * a);
      push(r, "quadratic", -2 * (mm - 1) * nn1 * a * a);
      push(r, "quartic", mm * a * a * a * a);
    } else if (p.alpha == 1) {
      push(r, "linear", 4 * (mm - 1) * a * nn1);
    } else {
      const Rational al = exact_alpha(p.alpha);
      const Rational ia = 1 / al;
      const Rational K = ia * (1 + (mm - 1) * (1 - al));
      push(r, "linear", 4 * (mm - 1) * ia * a * nn1);
      push(r, "quadratic", -2 * (mm - 1) * ia * (ia - 1) * a * a * nn1);
      push(r, "quartic", K * (ia - 1) * (ia - 2) * a * a * a * a);
    }
  } else {
    const Rational al = exact_alpha(p.alpha);
    const Rational b = st;
    const Rational C = c_alpha_m(p.alpha, p.m);
    push(r, "curvature", -2 * (mm - 1) / (b * b));
    push(r, "quartic", -C / (b * b * b * b));
    push(r, "transverse", (mm - 1) * nn1 * (2 * al - 1) / (1 - al));
    r.c_alpha_m_exact = C;
    r.c_alpha_m = C.get_d();
  }
  // w(0) = 1, so the alpha = 0 rate carries the factor e^{w(0)} = e.
  finish(r, p.family == Family::kCase1 && p.alpha == 0 ? std::exp(1.0) : 1.0);
  return r;
}

RateBreakdown case2_raw_rate(const ConstructionParams& p) {
  p.validate();
  if (p.family != Family::kCase2) {
    throw Error(ErrorKind::kFamilyRange, "the five-term display exists only for case2");
  }
  const Rational al = exact_alpha(p.alpha);
  const Rational mm = exact_m(p.m);
  const Rational nn1 = p.n - 1;
  const Rational b = exact_steepness(p.steepness);
  const Rational s2 = Rational(3, 2) - al;
  const Rational ia = 1 / al;
  const Rational om = 1 - al;
  const Rational K = ia * (1 + (mm - 1) * (1 - al));
  RateBreakdown r;
  push(r, "w1111", (mm - 1) * (-2 / (b * b)));
  push(r, "wkk11", (mm - 1) * (-4 * nn1));
  push(r, "w1_wkk1", 2 * (mm - 1) * ia * (al * s2 / om) * 2 * nn1);
  push(r, "w1sq_wkk", (mm - 1) * ia * (ia - 1) * (al * al * s2 / (om * om)) * (-2 * nn1));
  const Rational g = al * al * s2 / (b * b * om * om);
  push(r, "w1sq_wksq", K * (ia - 2) * (ia - 1) * g * g);
  finish(r);
  r.c_alpha_m_exact = c_alpha_m(p.alpha, p.m);
  r.c_alpha_m = r.c_alpha_m_exact.get_d();
  return r;
}

double leading_negative_term(const ConstructionParams& p) {
  const double m1 = exact_m(p.m).get_d() - 1;
  if (p.family == Family::kCase1) return -(24 + 8.0 * (p.n - 1)) * m1;
  return -2 * m1 / (p.steepness * p.steepness);
}

double solve_steepness(double alpha, double m, int n, double margin) {
  if (!(margin >= 0 && margin < 1)) {
    throw Error(ErrorKind::kInvalidArgument, "margin must lie in [0, 1)");
  }
  ConstructionParams p;
  p.alpha = alpha;
  p.m = m;
  p.n = n;
  p.family = family_for_alpha(alpha);
  p.steepness = 1;
  p.validate();
  const Rational mq = rational_from_double(margin);
  for (int k = 0; k < 500; ++k) {
    p.steepness = 0.1 * std::pow(1.05, k);
    const RateBreakdown r = origin_rate(p);
    const Rational lead = abs(r.terms.front().exact);
    if (sgn(r.total_exact) <= 0 || r.total_exact < mq * lead) continue;
    ConstructionParams twice = p;
    twice.steepness = 2 * p.steepness;
    if (sgn(origin_rate(twice).total_exact) > 0) return p.steepness;
  }
  throw Error(ErrorKind::kSearchExhausted,
              "no admissible steepness within 500 grid steps for alpha = " + format_double(alpha) +
                  ", m = " + format_double(m) + ", n = " + std::to_string(n));
}

std::string format_params(const ConstructionParams& p) {
  KeyValues kv;
  kv.set("alpha", p.alpha);
  kv.set("m", p.m);
  kv.set("n", p.n);
  kv.set("family", family_name(p.family));
  kv.set("steepness", p.steepness);
  kv.set("rho", p.rho);
  kv.set("amplitude", p.amplitude);
  kv.set("alpha_exact", format_rational(exact_alpha(p.alpha)));
  kv.set("m_exact", format_rational(exact_m(p.m)));
  kv.set("steepness_exact", format_rational(exact_steepness(p.steepness)));
  return kv.format();
}

ConstructionParams parse_params(const std::string& text) {
  const KeyValues kv = KeyValues::parse(text);
  ConstructionParams p;
  p.alpha = kv.require_double("alpha");
  p.m = kv.require_double("m");
  p.n = static_cast<int>(kv.require_long("n"));
  p.family = parse_family(kv.require("family"));
  p.steepness = kv.require_double("steepness");
  if (kv.has("rho")) p.rho = kv.require_double("rho");
  if (kv.has("amplitude")) p.amplitude = kv.require_double("amplitude");
  p.validate();
  return p;
}

std::string format_rate_breakdown(const RateBreakdown& r) {
  KeyValues kv;
  kv.set("total", r.total);
  kv.set("total_exact", format_rational(r.total_exact));
  kv.set("prefactor", r.prefactor);
  kv.set("term_count", static_cast<long>(r.terms.size()));
  for (std::size_t i = 0; i < r.terms.size(); ++i) {
    kv.set("term." + r.terms[i].name,
           format_double(r.terms[i].value) + " exact=" + format_rational(r.terms[i].exact));
  }
  kv.set("c_alpha_m", r.c_alpha_m);
  kv.set("c_alpha_m_exact", format_rational(r.c_alpha_m_exact));
  return kv.format();
}

}  // namespace pmecc
