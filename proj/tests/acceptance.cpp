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

// Acceptance run: one PASS/FAIL line per criterion.
//
// Reference values are computed here independently of the library paths they
// check: rates come from exact symbolic derivatives of the polynomial along
// x1, minor forms and the Barenblatt pressure are written out by hand.
//
// Usage: acceptance [--expect-fail 8,...]
// Exit status is 0 when the failing criteria are exactly the expected set.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pmecc/core/assembly.hpp"
#include "pmecc/core/construction.hpp"
#include "pmecc/core/jet.hpp"
#include "pmecc/core/keyvalue.hpp"
#include "pmecc/core/linalg.hpp"
#include "pmecc/core/rate.hpp"
#include "pmecc/core/sampling.hpp"
#include "pmecc/core/solver.hpp"
#include "pmecc/core/verifier.hpp"

using namespace pmecc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [" << what << "]";
    }
  }
};

double rel(double a, double b) { return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-300}); }

ConstructionParams config(double alpha, double m, int n, double steepness) {
  ConstructionParams p;
  p.alpha = alpha;
  p.m = m;
  p.n = n;
  p.family = family_for_alpha(alpha);
  p.steepness = steepness;
  return p;
}

// Value, first and second derivative along x1 of p at x, exactly.
struct Line {
  Surd d0, d1, d2;
};

Line along(const Poly& p, const std::vector<Rational>& x) {
  return {evaluate(p, x), evaluate(derive(p, 0, 1), x), evaluate(derive(p, 0, 2), x)};
}

// d/dt w_11 for w = v^alpha (log v when alpha = 0) evolving by the pressure
// equation, from the w equation
//   alpha > 0: w_t = (m-1) w^b lap w + ((m-1)(b-1) + b) w^(b-1) |grad w|^2, b = 1/alpha
//   alpha = 0: w_t = e^w ((m-1) lap w + m |grad w|^2)
// differentiated twice along x1 by Leibniz. The alpha > 0 form needs w(x) = 1.
// Returns the exact value, without the e^w factor for alpha = 0.
Surd reference_rate(const Poly& w, const Rational& alpha, const Rational& m,
                    const std::vector<Rational>& x) {
  const int n = w.dimension();
  Poly lap(n, w.radicand()), grad2(n, w.radicand());
  for (int k = 0; k < n; ++k) {
    lap += derive(w, k, 2);
    const Poly wk = derive(w, k);
    grad2 += wk * wk;
  }
  const Line W = along(w, x), L = along(lap, x), G = along(grad2, x);
  if (alpha == 0) {
    const Surd q0 = Surd(m - 1) * L.d0 + Surd(m) * G.d0;
    const Surd q1 = Surd(m - 1) * L.d1 + Surd(m) * G.d1;
    const Surd q2 = Surd(m - 1) * L.d2 + Surd(m) * G.d2;
    return (W.d2 + W.d1 * W.d1) * q0 + Surd(2) * W.d1 * q1 + q2;
  }
  if (!(W.d0 == Surd(1))) throw std::runtime_error("reference_rate needs w = 1 at the point");
  const Rational b = 1 / alpha;
  const Surd f1 = Surd(b) * W.d1;
  const Surd f2 = Surd(b) * W.d2 + Surd(b * (b - 1)) * W.d1 * W.d1;
  const Surd h1 = Surd(b - 1) * W.d1;
  const Surd h2 = Surd(b - 1) * W.d2 + Surd((b - 1) * (b - 2)) * W.d1 * W.d1;
  const Rational c = (m - 1) * (b - 1) + b;
  return Surd(m - 1) * (f2 * L.d0 + Surd(2) * f1 * L.d1 + L.d2) +
         Surd(c) * (h2 * G.d0 + Surd(2) * h1 * G.d1 + G.d2);
}

std::vector<Rational> origin(int n) { return std::vector<Rational>(n, Rational(0)); }

double reference_origin_rate(const ConstructionParams& p, const Poly& w) {
  const Surd r = reference_rate(w, exact_alpha(p.alpha), exact_m(p.m), origin(p.n));
  return p.alpha == 0 ? std::exp(1.0) * r.to_double() : r.to_double();
}

const std::vector<double> kAlphas = {0, 0.1, 0.25, 0.4, 0.6, 0.75, 0.9, 1};
const std::vector<double> kMs = {1.5, 2, 3};
const std::vector<int> kNs = {2, 3, 4};

// ---------------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  const auto t0 = Clock::now();
  int configs = 0;
  for (double a : kAlphas)
    for (double m : kMs)
      for (int n : kNs) {
        ConstructionParams p = config(a, m, n, solve_steepness(a, m, n));
        const Poly w = build_family(p);
        const VerificationReport r = verify(p, w);
        ++configs;
        std::ostringstream tag;
        tag << "alpha=" << a << " m=" << m << " n=" << n;
        o.require(r.c1.pass, tag.str() + " condition 1");
        o.require(r.c2.result.pass, tag.str() + " condition 2");
        o.require(r.c2.result.samples >= 10000, tag.str() + " fewer than 1e4 samples");
        o.require(r.c3 && r.c3->pass, tag.str() + " condition 3");
      }
  const double secs = seconds_since(t0);
  o.require(secs < 300, "runtime over 5 min");
  o.detail << " configs=" << configs << " runtime=" << secs << "s";
  return o;
}

Outcome criterion2() {
  Outcome o;
  struct Root {
    double alpha, m;
    int n;
    double a;
  };
  for (const Root& c : {Root{0, 2, 2, 2}, Root{1, 2, 2, 8}, Root{1, 2, 3, 5}}) {
    const ConstructionParams p = config(c.alpha, c.m, c.n, c.a);
    const RateBreakdown r = origin_rate(p);
    const Surd ref = reference_rate(build_family(p), exact_alpha(c.alpha), exact_m(c.m), origin(c.n));
    std::ostringstream tag;
    tag << "alpha=" << c.alpha << " n=" << c.n << " a=" << c.a;
    o.require(r.total_exact == 0, tag.str() + " closed form not exactly zero");
    o.require(ref.is_zero(), tag.str() + " reference rate not exactly zero");
    o.detail << " " << tag.str() << ":" << format_rational(r.total_exact);
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  double worst_eq3 = 0, worst_ref = 0;
  for (double a : kAlphas)
    for (double m : kMs)
      for (int n : kNs) {
        const ConstructionParams p = config(a, m, n, solve_steepness(a, m, n));
        const Poly w = build_family(p);
        const Jet<double> jet = jet_from_poly(w, std::vector<double>(n, 0.0));
        const double oracle = w11_rate_oracle(jet, a, m);
        const DerivativeTable t = DerivativeTable::from_jet(jet);
        const double printed =
            a == 0 ? sum_terms(printed_log_rate_terms(t, m)) : sum_terms(printed_rate_terms(t, a, m));
        const double ref = reference_origin_rate(p, w);
        double scale = std::fabs(ref);
        for (const auto& term : (a == 0 ? printed_log_rate_terms(t, m) : printed_rate_terms(t, a, m))) {
          scale = std::max(scale, std::fabs(term.value));
        }
        worst_eq3 = std::max(worst_eq3, std::fabs(oracle - printed) / scale);
        worst_ref = std::max(worst_ref, std::fabs(oracle - ref) / scale);
      }
  o.require(worst_eq3 <= 1e-9, "oracle vs printed formula");
  o.require(worst_ref <= 1e-9, "oracle vs exact reference");

  // Case 2: five-term display against the three-term simplification.
  std::mt19937_64 rng(20260301);
  std::uniform_real_distribution<double> ua(0.5, 1), um(1.05, 4), ub(0.3, 6);
  std::uniform_int_distribution<int> un(2, 4);
  double worst_c2 = 0, worst_hand = 0;
  for (int k = 0; k < 50; ++k) {
    double a = ua(rng);
    if (a <= 0.5 || a >= 1) a = 0.75;
    const ConstructionParams p = config(a, um(rng), un(rng), ub(rng));
    const double three = origin_rate(p).total;
    const double five = case2_raw_rate(p).total;
    worst_c2 = std::max(worst_c2, rel(three, five));
    // Same quantity written out here.
    const double al = p.alpha, m = p.m, b = p.steepness, nn = p.n;
    const double g = al * al * (1.5 - al) / ((1 - al) * (1 - al));
    const double C = -(1 / al) * (1 + (m - 1) * (1 - al)) * (1 / al - 2) * (1 / al - 1) * g * g;
    const double hand = -2 * (m - 1) / (b * b) - C / (b * b * b * b) +
                        (m - 1) * (nn - 1) * (2 * al - 1) / (1 - al);
    worst_hand = std::max(worst_hand, rel(three, hand));
  }
  o.require(worst_c2 <= 1e-12, "case 2 five-term vs three-term");
  o.require(worst_hand <= 1e-12, "case 2 three-term vs hand formula");
  const Rational c34 = c_alpha_m(0.75, 2);
  o.require(c34 == Rational(135, 8), "C_{3/4,2} != 16.875");
  o.detail << " oracle_vs_printed=" << worst_eq3 << " oracle_vs_reference=" << worst_ref
           << " case2_5vs3=" << worst_c2 << " C(3/4,2)=" << format_rational(c34);
  return o;
}

// A fixed-degree polynomial with small integer coefficients in every monomial.
Poly random_poly(int n, int degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-5, 5);
  Poly p(n);
  std::function<void(int, int, std::vector<int>&)> rec = [&](int var, int left, std::vector<int>& e) {
    if (var == n) {
      p.add_term(MultiIndex(e), Surd(Rational(coef(rng), 3)));
      return;
    }
    for (int d = 0; d <= left; ++d) {
      e[var] = d;
      rec(var + 1, left - d, e);
    }
    e[var] = 0;
  };
  std::vector<int> e(n, 0);
  rec(0, degree, e);
  return p;
}

Outcome criterion4() {
  Outcome o;
  std::mt19937_64 rng(20260302);
  std::uniform_real_distribution<double> ux(-0.5, 0.5), um(1.1, 3.5);
  const std::set<std::string> known = {"e^w w_1 w_k w_k1", "e^w w_11 w_k^2"};
  int exact_flags = 0;
  double worst_chain = 0;
  for (int k = 0; k < 50; ++k) {
    const int n = 3;
    const Poly w = random_poly(n, 4, rng);
    std::vector<double> x(n);
    std::vector<Rational> xq(n);
    for (int i = 0; i < n; ++i) {
      x[i] = std::ldexp(std::round(std::ldexp(ux(rng), 20)), -20);
      xq[i] = rational_from_double(x[i]);
    }
    const double m = std::ldexp(std::round(std::ldexp(um(rng), 20)), -20);
    const DerivativeTable t = DerivativeTable::from_jet(jet_from_poly(w, x));
    std::set<std::string> flagged;
    for (const auto& row : audit_log_rate(t, m)) {
      if (row.flagged) flagged.insert(row.name);
    }
    if (flagged == known) ++exact_flags;
    const double ref = std::exp(t.w) * reference_rate(w, 0, rational_from_double(m), xq).to_double();
    const auto chain = chain_rule_log_rate_terms(t, m);
    double scale = std::fabs(ref);
    for (const auto& c : chain) scale = std::max(scale, std::fabs(c.value));
    worst_chain = std::max(worst_chain, std::fabs(sum_terms(chain) - ref) / scale);
  }
  o.require(exact_flags == 50, "flagged set differs from the two known discrepancies");
  o.require(worst_chain <= 1e-9, "chain-rule expansion vs reference");

  double worst_origin = 0;
  for (double m : kMs)
    for (int n : kNs)
      for (double a : {0.5, 1.0, 2.0, 3.25}) {
        const ConstructionParams p = config(0, m, n, a);
        const double display = -(24 + 8 * (n - 1)) * (m - 1) + 4 * (m - 1) * (n - 1) * a -
                               2 * (m - 1) * (n - 1) * a * a + m * a * a * a * a;
        const Poly w = build_family(p);
        const double oracle = w11_rate_oracle(jet_from_poly(w, std::vector<double>(n, 0.0)), 0, m);
        const double scale = std::max({std::fabs(display), 24.0 * m, m * a * a * a * a});
        worst_origin = std::max(worst_origin, std::fabs(oracle / std::exp(1.0) - display) / scale);
      }
  o.require(worst_origin <= 1e-9, "origin specialization vs oracle");
  o.detail << " points_with_exactly_two_flags=" << exact_flags << "/50 chain_vs_reference="
           << worst_chain << " origin_specialization=" << worst_origin;
  return o;
}

Poly square(int n, int var) { return Poly::monomial(MultiIndex::unit(n, var, 2), Surd(1)); }

Outcome criterion5() {
  Outcome o;
  int checked = 0;
  for (int n = 2; n <= 4; ++n) {
    const ConstructionParams p1 = config(1, 2, n, 3);
    const ConstructionParams p2 = config(0.75, 2, n, 2);
    const Poly w1 = build_family(p1), w2 = build_family(p2);
    for (int j = 1; j <= n; ++j) {
      const Poly lead1 = minor_leading_order(w1, j), lead2 = minor_leading_order(w2, j);
      o.require(lead1 == displayed_minor_form(p1, j), "case 1 n=" + std::to_string(n) + " j=" + std::to_string(j));
      o.require(lead2 == displayed_minor_form(p2, j), "case 2 n=" + std::to_string(n) + " j=" + std::to_string(j));
      if (j < 2) continue;
      // Hand-built forms: sums over i = 2..n and i = 2..j.
      Poly all(n), head(n);
      for (int i = 1; i < n; ++i) all += square(n, i);
      for (int i = 1; i < j; ++i) head += square(n, i);
      const Rational sign = j % 2 == 0 ? 1 : -1;
      Rational c1 = sign, c2 = sign;
      for (int k = 0; k < j; ++k) c1 *= 2;
      const Rational b = 2;
      for (int k = 0; k < j - 1; ++k) c2 *= 2 * b * b;
      const Poly form1 = (square(n, 0) * Surd(6) + all * Surd(2) - head) * Surd(c1);
      const Poly form2 = (square(n, 0) * Surd(Rational(1) / (b * b)) + all * Surd(2) -
                          head * Surd(2 * (Rational(3, 2) - Rational(3, 4)))) *
                         Surd(c2);
      o.require(lead1 == form1, "case 1 hand form n=" + std::to_string(n) + " j=" + std::to_string(j));
      o.require(lead2 == form2, "case 2 hand form n=" + std::to_string(n) + " j=" + std::to_string(j));
      checked += 2;
    }
  }
  o.detail << " hand_forms_checked=" << checked;
  return o;
}

// ---------------------------------------------------------------------------

Outcome criterion6() {
  Outcome o;
  const auto t0 = Clock::now();
  for (double a : {0.0, 0.25, 0.75, 1.0}) {
    ConstructionParams p = config(a, 2, 3, solve_steepness(a, 2, 3));
    const Poly w = build_family(p);
    p.rho = verify(p, w).c2.rho;
    const std::string tag = "alpha=" + format_double(a);
    AutoAssemblyResult r;
    try {
      r = assemble_driver(p, w, "literal", {}, {});
    } catch (const std::exception& e) {
      o.require(false, tag + " " + e.what());
      continue;
    }
    const AssemblyBundle& b = r.bundle;
    const int n = b.dimension();
    const double rho = b.rho();
    o.require(r.report.passed, tag + " assembly report");
    o.require(r.report.global_max_eigenvalue <= -1e-6, tag + " sampled eigenvalue above -1e-6");

    // Own sample of the concavity bound off B_{rho/100}.
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0, 1);
    double worst = -1e300;
    for (int k = 0; k < 3000; ++k) {
      std::vector<double> x(n);
      double s = 0;
      for (double& xi : x) {
        xi = g(rng);
        s += xi * xi;
      }
      const double r_ = rho / 100 + (rho * 0.99 - rho / 100) * std::pow(u(rng), 1.0 / n);
      for (double& xi : x) xi *= r_ / std::sqrt(s);
      const auto ev = jacobi_eigenvalues(b.w_tilde_hessian(x.data()));
      worst = std::max(worst, *std::max_element(ev.begin(), ev.end()));
    }
    o.require(worst <= -1e-6, tag + " own sample eigenvalue " + format_double(worst));

    const std::vector<double> zero(n, 0.0);
    const auto ev0 = jacobi_eigenvalues(b.w_tilde_hessian(zero.data()));
    int zeros = 0, negatives = 0;
    for (double e : ev0) {
      if (std::fabs(e) < 1e-9) ++zeros;
      else if (e < 0) ++negatives;
    }
    o.require(zeros == 1 && negatives == n - 1, tag + " origin eigenvalue pattern");

    // Inward one-sided gradient on the sphere against the closed forms.
    double floor = 1e300, worst_rel = 0;
    const long double d = rho * 1e-4L;
    for (const auto& dir : unit_sphere_samples(n, 500, 11)) {
      std::vector<long double> x1(n), x2(n), xb(n);
      for (int i = 0; i < n; ++i) {
        x1[i] = dir[i] * (rho - d);
        x2[i] = dir[i] * (rho - 2 * d);
        xb[i] = dir[i] * static_cast<long double>(rho);
      }
      const long double grad = (4 * b.v0(x1.data()) - b.v0(x2.data())) / (2 * d);
      long double closed;
      if (a == 0) closed = std::exp(evaluate(b.w, xb) - static_cast<long double>(b.shift));
      else if (a == 1) closed = 2.0L * b.amplitude * rho;
      else closed = std::pow(static_cast<long double>(b.amplitude), 1.0L / a);
      floor = std::min(floor, static_cast<double>(grad));
      worst_rel = std::max(worst_rel, static_cast<double>(std::fabs(grad - closed) / closed));
    }
    o.require(floor > 0, tag + " boundary gradient floor");
    o.require(worst_rel <= 1e-6, tag + " boundary gradient vs closed form " + format_double(worst_rel));
    o.detail << " " << tag << ":A=" << b.amplitude << ",max_eig=" << worst << ",grad_rel=" << worst_rel;
  }
  const double secs = seconds_since(t0);
  o.require(secs < 120, "runtime over 2 min");
  o.detail << " runtime=" << secs << "s";
  return o;
}

// Barenblatt pressure for n = 2, m = 2: v = 2 C tau^(-1/2) - |x|^2 / (8 tau), cut at 0.
constexpr double kC = 1.0 / 64;
long double barenblatt(const long double* x, long double tau) {
  const long double v = 2 * kC / std::sqrt(tau) - (x[0] * x[0] + x[1] * x[1]) / (8 * tau);
  return std::max(v, 0.0L);
}
double barenblatt_front(double tau) { return std::sqrt(16 * kC * std::sqrt(tau)); }

// Residual of v_t - (vΔv + |∇v|^2) by centered differences inside the support.
double barenblatt_residual() {
  double worst = 0;
  const long double e = 1e-4L;
  for (long double r : {0.05L, 0.1L, 0.2L}) {
    const long double tau = 1.2L;
    const long double x[2] = {r * 0.6L, r * 0.8L};
    auto at = [&](long double dx, long double dy, long double dt) {
      const long double y[2] = {x[0] + dx, x[1] + dy};
      return barenblatt(y, tau + dt);
    };
    const long double v = at(0, 0, 0);
    const long double vt = (at(0, 0, e) - at(0, 0, -e)) / (2 * e);
    const long double vx = (at(e, 0, 0) - at(-e, 0, 0)) / (2 * e);
    const long double vy = (at(0, e, 0) - at(0, -e, 0)) / (2 * e);
    const long double lap = (at(e, 0, 0) + at(-e, 0, 0) + at(0, e, 0) + at(0, -e, 0) - 4 * v) / (e * e);
    const long double rhs = v * lap + vx * vx + vy * vy;
    worst = std::max(worst, static_cast<double>(std::fabs(vt - rhs) / std::fabs(vt)));
  }
  return worst;
}

struct BarenblattRun {
  double interior_error = 0;
  double mass_drift = 0;
  double clamp_ratio = 0;
  double max_lambda1 = -1e300;
  bool monotone = true;
};

BarenblattRun run_barenblatt(int res) {
  BarenblattRun out;
  GridField g = sample_field(2, 1.0, res, [](const long double* x) { return barenblatt(x, 1.0L); });
  const double m0 = mass_proxy(g, 2);
  double last_max = g.max_v;
  auto track = [&] {
    out.max_lambda1 = std::max(out.max_lambda1, probe(g, 1).lambda1);
    out.mass_drift = std::max(out.mass_drift, std::fabs(mass_proxy(g, 2) / m0 - 1));
  };
  track();
  const double T = 0.5;
  while (g.t < T) {
    StepStats st;
    step(g, 2, std::min(admissible_dt(g, 2), T - g.t), 1, &st);
    out.clamp_ratio = std::max(out.clamp_ratio, st.clamp_norm / static_cast<double>(g.max_v));
    if (g.max_v > last_max * (1 + 1e-10)) out.monotone = false;
    last_max = g.max_v;
    track();
  }
  const double rf = barenblatt_front(1 + T);
  for (int i = 0; i < res; ++i)
    for (int j = 0; j < res; ++j) {
      const long double x[2] = {g.coordinate(i), g.coordinate(j)};
      if (std::hypot(static_cast<double>(x[0]), static_cast<double>(x[1])) > rf / 2) continue;
      const double err = std::fabs(static_cast<double>(g.v[i * res + j] - barenblatt(x, 1 + T)));
      out.interior_error = std::max(out.interior_error, err);
    }
  return out;
}

double level_crossing(const GridField& f, long double level) {
  for (int i = 0; i + 1 < f.res; ++i) {
    if (f.v[i] < level && f.v[i + 1] >= level) {
      return f.coordinate(i) + f.h * static_cast<double>((level - f.v[i]) / (f.v[i + 1] - f.v[i]));
    }
  }
  return NAN;
}

// v = max(c (x + 1/2 + c t), 0) in 1D; the front sits at x = -1/2 - c t.
double wave_speed(double c, double T, int res) {
  GridField f = sample_field(1, 1.0, res, [c](const long double* x) {
    return std::max(0.0L, static_cast<long double>(c) * (x[0] + 0.5L));
  });
  const long double level = 4 * c * f.h;
  const double x0 = level_crossing(f, level);
  while (f.t < T) step(f, 2, std::min(admissible_dt(f, 2), T - f.t));
  return (x0 - level_crossing(f, level)) / T;
}

BarenblattRun g_runs[2];

Outcome criterion7() {
  Outcome o;
  const auto t0 = Clock::now();
  const double residual = barenblatt_residual();
  o.require(residual < 1e-6, "closed form fails the pressure equation");
  g_runs[0] = run_barenblatt(65);
  g_runs[1] = run_barenblatt(129);
  const double ratio = g_runs[0].interior_error / g_runs[1].interior_error;
  o.require(ratio >= 3, "error ratio " + format_double(ratio));
  for (const auto& r : g_runs) {
    o.require(r.mass_drift < 0.01, "mass drift " + format_double(r.mass_drift));
    o.require(r.clamp_ratio < 1e-12, "clamp ratio " + format_double(r.clamp_ratio));
    o.require(r.monotone, "max v increased");
  }
  double worst_speed = 0;
  for (auto [c, T] : {std::pair{1.0, 0.1}, std::pair{0.25, 0.4}}) {
    const double s = wave_speed(c, T, 257);
    worst_speed = std::max(worst_speed, std::fabs(s - c) / c);
    o.detail << " speed(c=" << c << ")=" << s;
  }
  o.require(worst_speed <= 0.05, "front speed off by " + format_double(worst_speed));
  const double secs = seconds_since(t0);
  o.require(secs < 180, "runtime over 3 min");
  o.detail << " pde_residual=" << residual << " err65=" << g_runs[0].interior_error
           << " err129=" << g_runs[1].interior_error << " ratio=" << ratio
           << " mass_drift=" << std::max(g_runs[0].mass_drift, g_runs[1].mass_drift)
           << " clamp=" << std::max(g_runs[0].clamp_ratio, g_runs[1].clamp_ratio)
           << " runtime=" << secs << "s";
  return o;
}

Outcome criterion8() {
  Outcome o;
  struct Case {
    double alpha, steepness;
  };
  for (const Case& c : {Case{1, 10}, Case{0.75, solve_steepness(0.75, 2, 3)}}) {
    const auto t0 = Clock::now();
    ConstructionParams p = config(c.alpha, 2, 3, c.steepness);
    const Poly w = build_family(p);
    p.rho = verify(p, w).c2.rho;
    const AssemblyBundle b = assemble_driver(p, w, "anchored", {}, {}).bundle;
    const double closed = origin_rate(p).total;
    const double h49 = discretize(b, 49).h;
    EvolveOptions opt;
    opt.alpha = c.alpha;
    opt.m = 2;
    opt.horizon = 2 * 10 * h49 * h49 / closed;
    const std::string tag = "alpha=" + format_double(c.alpha);
    ProbeSeries s[2];
    int k = 0;
    for (int res : {49, 65}) {
      s[k] = evolve_and_probe(b, res, opt);
      const ProbeSeries& r = s[k++];
      const std::string rt = tag + " res=" + std::to_string(res);
      o.require(r.detected, rt + " no crossing");
      o.require(!r.detected || r.detection_local, rt + " crossing at step " +
                                                      std::to_string(r.detection_step) +
                                                      " is past the locality window of " +
                                                      std::to_string(r.local_steps) + " steps");
      o.require(rel(r.measured_rate, closed) <= 0.25, rt + " rate " + format_double(r.measured_rate));
      o.detail << " " << rt << ":t*=" << r.t_star << ",step=" << r.detection_step << "/"
               << r.local_steps << ",lambda1=" << r.lambda1_at_detection
               << ",rate=" << r.measured_rate << "/" << closed;
    }
    o.require(s[0].detected && s[1].detected &&
                  (s[0].lambda1_at_detection > 0) == (s[1].lambda1_at_detection > 0),
              tag + " sign differs");
    o.require(s[1].t_star <= s[0].t_star, tag + " t* grew under refinement");
    const double secs = seconds_since(t0);
    o.require(secs < 900, tag + " runtime over 15 min");
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  for (int k = 0; k < 2; ++k) {
    o.require(g_runs[k].max_lambda1 < 0, "lambda1 reached " + format_double(g_runs[k].max_lambda1));
  }
  o.detail << " max_lambda1(65)=" << g_runs[0].max_lambda1 << " max_lambda1(129)=" << g_runs[1].max_lambda1;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--expect-fail") {
      std::istringstream in(argv[++i]);
      std::string item;
      while (std::getline(in, item, ',')) expected.insert(std::stoi(item));
    }
  }
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
      {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}};
  std::set<int> failed;
  for (const auto& [id, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    if (!o.pass) failed.insert(id);
    std::printf("criterion %d: %s%s\n", id, o.pass ? "PASS" : "FAIL", o.detail.str().c_str());
    std::fflush(stdout);
  }
  if (failed != expected) {
    std::printf("failing criteria differ from the expected set\n");
    return 1;
  }
  return 0;
}
