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

#include "pmecc/core/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>

#include "pmecc/core/error.hpp"
#include "pmecc/core/jet.hpp"
#include "pmecc/core/keyvalue.hpp"
#include "pmecc/core/parallel.hpp"
#include "pmecc/core/rate.hpp"

namespace pmecc {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kNegativeDefinite: return "negative_definite";
    case Verdict::kNegativeSemidefinite: return "negative_semidefinite";
    case Verdict::kIndefinite: return "indefinite";
  }
  return "indefinite";
}

namespace {

// Floating value with a rigorous bound on its accumulated rounding error.
struct Approx {
  double v = 0;
  double e = 0;
};

constexpr double kU = 2.220446049250313e-16;  // 2^-52, twice the unit roundoff

Approx operator+(Approx a, Approx b) {
  const double v = a.v + b.v;
  return {v, a.e + b.e + kU * std::fabs(v)};
}
Approx operator-(Approx a, Approx b) {
  const double v = a.v - b.v;
  return {v, a.e + b.e + kU * std::fabs(v)};
}
Approx operator*(Approx a, Approx b) {
  const double v = a.v * b.v;
  return {v, std::fabs(a.v) * b.e + std::fabs(b.v) * a.e + a.e * b.e + kU * std::fabs(v)};
}

// Laplace expansion of the leading j x j block of a row-major n x n array.
template <typename T>
T laplace(const std::vector<T>& m, int n, std::vector<int>& cols, int row, int j, const T& zero,
          const T& one) {
  if (row == j) return one;
  T det = zero;
  bool plus = true;
  for (int c = 0; c < j; ++c) {
    const int col = cols[c];
    if (col < 0) continue;
    cols[c] = -1;
    T sub = laplace(m, n, cols, row + 1, j, zero, one);
    cols[c] = col;
    T prod = m[row * n + col] * sub;
    det = plus ? det + prod : det - prod;
    plus = !plus;
  }
  return det;
}

template <typename T>
std::vector<T> all_minors(const std::vector<T>& m, int n, const T& zero, const T& one) {
  std::vector<T> out;
  for (int j = 1; j <= n; ++j) {
    std::vector<int> cols(j);
    for (int c = 0; c < j; ++c) cols[c] = c;
    out.push_back(laplace(m, n, cols, 0, j, zero, one));
  }
  return out;
}

double norm2(const std::vector<double>& x) {
  double s = 0;
  for (double v : x) s += v * v;
  return s;
}

bool sylvester_ok(const std::vector<int>& signs) {
  for (std::size_t j = 0; j < signs.size(); ++j) {
    const int want = (j % 2 == 0) ? -1 : 1;  // j is zero-based: det_1 < 0, det_2 > 0, ...
    if (signs[j] != want) return false;
  }
  return true;
}

}  // namespace

HessianField::HessianField(const Poly& w) : n_(w.dimension()) {
  exact_.reserve(n_ * n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) exact_.push_back(hessian_entry(w, i, j));
  }
  for (const Poly& p : exact_) {
    std::vector<Term> terms;
    for (const auto& [idx, c] : p.terms()) {
      const double mag = std::fabs(c.rational_part().get_d()) +
                         std::fabs(c.surd_part().get_d()) * std::sqrt(c.radicand().get_d());
      terms.push_back({c.to_double(), 8 * kU * mag + 1e-300, idx.exponents});
    }
    filtered_.push_back(std::move(terms));
  }
}

SymMatrix HessianField::evaluate(const std::vector<double>& x) const {
  SymMatrix h(n_);
  for (int k = 0; k < n_ * n_; ++k) h.a[k] = pmecc::evaluate(exact_[k], x);
  return h;
}

std::vector<int> HessianField::minor_signs_exact(const std::vector<double>& x) const {
  std::vector<Rational> q;
  for (double v : x) q.push_back(rational_from_double(v));
  std::vector<Surd> h;
  h.reserve(n_ * n_);
  for (const Poly& p : exact_) h.push_back(pmecc::evaluate(p, q));
  std::vector<int> signs;
  for (const Surd& d : all_minors<Surd>(h, n_, Surd(0), Surd(1))) signs.push_back(d.sign());
  return signs;
}

std::vector<int> HessianField::minor_signs(const std::vector<double>& x, std::vector<double>* values,
                                           bool* used_exact) const {
  // Coordinates are exact doubles, so powers carry only multiplication error.
  std::vector<Approx> h(n_ * n_);
  for (int k = 0; k < n_ * n_; ++k) {
    Approx sum;
    for (const Term& t : filtered_[k]) {
      Approx term{t.coeff, t.err};
      for (int d = 0; d < n_; ++d) {
        for (int p = 0; p < t.exps[d]; ++p) term = term * Approx{x[d], 0};
      }
      sum = sum + term;
    }
    h[k] = sum;
  }
  const auto minors = all_minors<Approx>(h, n_, Approx{0, 0}, Approx{1, 0});
  std::vector<int> signs;
  bool undecided = false;
  if (values) values->clear();
  for (const Approx& d : minors) {
    if (values) values->push_back(d.v);
    if (std::fabs(d.v) > d.e) {
      signs.push_back(d.v > 0 ? 1 : -1);
    } else {
      undecided = true;
      signs.push_back(0);
    }
  }
  if (used_exact) *used_exact = undecided;
  if (undecided) return minor_signs_exact(x);
  return signs;
}

HessianReport HessianField::report(const std::vector<double>& x) const {
  HessianReport r;
  r.point = x;
  r.hessian = evaluate(x);
  r.minor_signs = minor_signs(x, &r.minors, nullptr);
  const auto ev = jacobi_eigenvalues(r.hessian);
  r.max_eigenvalue = ev.front();
  r.gershgorin = gershgorin_upper(r.hessian);
  if (sylvester_ok(r.minor_signs)) {
    r.verdict = Verdict::kNegativeDefinite;
  } else {
    double scale = 0;
    for (double v : r.hessian.a) scale = std::max(scale, std::fabs(v));
    r.verdict = r.max_eigenvalue <= 1e-10 * std::max(1.0, scale) ? Verdict::kNegativeSemidefinite
                                                                  : Verdict::kIndefinite;
  }
  return r;
}

Poly hessian_entry(const Poly& w, int i, int j) {
  MultiIndex e = MultiIndex::zero(w.dimension());
  ++e[i];
  ++e[j];
  return derive(w, e);
}

Condition1Result check_condition1(const Poly& w) {
  Condition1Result res;
  const int n = w.dimension();
  HessianField field(w);
  const std::vector<double> origin(n, 0.0);
  res.origin = field.report(origin);
  const std::vector<Rational> zero(n, Rational(0));
  res.pass = true;
  for (int i = 0; i < n && res.pass; ++i) {
    for (int j = 0; j < n; ++j) {
      const Surd h = evaluate(field.entry(i, j), zero);
      const bool diag_tail = (i == j && i >= 1);
      if (diag_tail ? h.sign() >= 0 : !h.is_zero()) {
        res.pass = false;
        res.detail = "w_" + std::to_string(i + 1) + std::to_string(j + 1) + "(0) = " +
                     format_surd(h) + (diag_tail ? " is not negative" : " is not zero");
        break;
      }
    }
  }
  if (res.pass) res.detail = "origin Hessian is diag(0, negative...)";
  return res;
}

Condition2Result check_condition2(const Poly& w, double rho, const SamplingOptions& opt) {
  if (!(rho > 0)) throw Error(ErrorKind::kInvalidArgument, "rho must be positive");
  const int n = w.dimension();
  HessianField field(w);
  const auto unit = unit_ball_samples(n, opt.seed, opt.spec);
  Condition2Result res;
  res.rho = rho;
  res.samples = unit.size();

  const int chunks = std::max(1, opt.threads);
  std::vector<double> chunk_margin(chunks, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> chunk_fallbacks(chunks, 0);
  std::vector<std::size_t> chunk_fail(chunks, unit.size());
  std::atomic<std::size_t> first_fail{unit.size()};

  parallel_chunks(unit.size(), chunks, [&](std::size_t b, std::size_t e, int c) {
    std::vector<double> x(n), vals;
    for (std::size_t i = b; i < e; ++i) {
      if (i > first_fail.load(std::memory_order_relaxed)) break;
      for (int d = 0; d < n; ++d) x[d] = unit[i][d] * rho;
      bool exact = false;
      const auto signs = field.minor_signs(x, &vals, &exact);
      if (exact) ++chunk_fallbacks[c];
      if (!sylvester_ok(signs)) {
        chunk_fail[c] = i;
        std::size_t cur = first_fail.load();
        while (i < cur && !first_fail.compare_exchange_weak(cur, i)) {
        }
        break;
      }
      const double r2 = norm2(x);
      for (double v : vals) chunk_margin[c] = std::min(chunk_margin[c], std::fabs(v) / r2);
    }
  });

  std::size_t fail = unit.size();
  for (int c = 0; c < chunks; ++c) fail = std::min(fail, chunk_fail[c]);
  res.margin = *std::min_element(chunk_margin.begin(), chunk_margin.end());
  for (auto f : chunk_fallbacks) res.exact_fallbacks += f;
  if (fail < unit.size()) {
    std::vector<double> x(n);
    for (int d = 0; d < n; ++d) x[d] = unit[fail][d] * rho;
    res.failing = field.report(x);
    res.pass = false;
    res.margin = 0;
  } else {
    res.pass = true;
  }
  return res;
}

RhoSearchResult rho_search(const Poly& w, const SamplingOptions& opt) {
  RhoSearchResult out;
  double rho = 0.5;
  for (int k = 0; k <= 30; ++k, rho *= 0.5) {
    Condition2Result r = check_condition2(w, rho, opt);
    out.trajectory.push_back({rho, r.pass, r.margin});
    if (r.pass) {
      out.rho = rho;
      out.result = std::move(r);
      const Condition2Result half = check_condition2(w, rho / 2, opt);
      out.trajectory.push_back({rho / 2, half.pass, half.margin});
      out.monotone = half.pass;
      return out;
    }
  }
  throw Error(ErrorKind::kConstructionInvalid,
              "condition (2) failed at every radius down to 2^-31; Hessian is not negative definite "
              "near the origin");
}

Poly leading_minor_poly(const Poly& w, int j) {
  const int n = w.dimension();
  if (j < 1 || j > n) throw Error(ErrorKind::kInvalidArgument, "minor index out of range");
  std::vector<Poly> h;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) h.push_back(hessian_entry(w, a, b));
  }
  std::vector<int> cols(j);
  for (int c = 0; c < j; ++c) cols[c] = c;
  return laplace<Poly>(h, n, cols, 0, j, Poly(n, w.radicand()), Poly::constant(n, Surd(1)));
}

Poly minor_leading_order(const Poly& w, int j) {
  const Poly det = leading_minor_poly(w, j);
  return homogeneous_part(det, lowest_degree(det));
}

Poly displayed_minor_form(const ConstructionParams& p, int j) {
  const int n = p.n;
  if (j < 1 || j > n) throw Error(ErrorKind::kInvalidArgument, "minor index out of range");
  auto sq = [n](int var) { return Poly::monomial(MultiIndex::unit(n, var, 2), Surd(1)); };
  Poly all_tail(n), head_tail(n);
  for (int i = 1; i < n; ++i) all_tail += sq(i);
  for (int i = 1; i < j; ++i) head_tail += sq(i);
  const Rational sign = (j % 2 == 0) ? 1 : -1;
  if (p.family == Family::kCase1) {
    Rational c = sign;
    for (int k = 0; k < j; ++k) c *= 2;
    Poly form = sq(0) * Surd(6) + all_tail * Surd(2) - head_tail;
    return form * Surd(c);
  }
  const Rational b = exact_steepness(p.steepness);
  const Rational s2 = case2_radicand(p.alpha);
  Rational c = sign;
  for (int k = 0; k < j - 1; ++k) c *= 2 * b * b;
  Poly form = sq(0) * Surd(Rational(1 / (b * b))) + all_tail * Surd(2) -
              head_tail * Surd(Rational(2 * s2));
  return form * Surd(c);
}

LeadingOrderCheck check_leading_order(const Poly& w, int j, double rho, int scales,
                                      std::uint64_t seed) {
  LeadingOrderCheck out;
  out.j = j;
  const Poly det = leading_minor_poly(w, j);
  const Poly lead = homogeneous_part(det, lowest_degree(det));
  const Poly rest = det - lead;
  const CompiledPoly crest(rest);
  BallSampleSpec spec;
  spec.full_count = 2000;
  spec.planar_count = 200;
  spec.ray_radii = 1;
  const auto dirs = unit_ball_samples(w.dimension(), seed, spec);
  for (int k = 0; k < scales; ++k) {
    const double r = rho * std::ldexp(1.0, -k);
    double worst = 0;
    for (const auto& u : dirs) {
      const double un = std::sqrt(norm2(u));
      if (un < 0.5) continue;  // keep the sample on the shell of radius ~r
      std::vector<double> x(u.size());
      for (std::size_t d = 0; d < u.size(); ++d) x[d] = u[d] * r;
      const double xn = std::sqrt(norm2(x));
      worst = std::max(worst, std::fabs(crest(x.data())) / (xn * xn * xn));
    }
    out.scale_ratios.push_back(worst);
  }
  out.k_bound = *std::max_element(out.scale_ratios.begin(), out.scale_ratios.end());
  out.pass = true;
  // Bounded ratios under refinement mean the remainder is O(|x|^3).
  for (std::size_t k = 1; k < out.scale_ratios.size(); ++k) {
    if (out.scale_ratios[k] > 1.5 * out.scale_ratios[0] + 1e-9) out.pass = false;
  }
  return out;
}

Condition3Result check_condition3(const Poly& w, const ConstructionParams& p) {
  Condition3Result res;
  res.closed_form = origin_rate(p);
  const int n = w.dimension();
  const Jet<double> jet = jet_cast<double>(jet_from_poly(w, std::vector<Rational>(n, Rational(0))));
  res.oracle = w11_rate_oracle(jet, p.alpha, exact_m(p.m).get_d());
  double scale = std::fabs(res.closed_form.total);
  for (const auto& t : res.closed_form.terms) scale = std::max(scale, std::fabs(t.value));
  const double diff = std::fabs(res.oracle - res.closed_form.total);
  res.rel_diff = scale > 0 ? diff / scale : diff;
  if (res.rel_diff > 1e-9) {
    throw Error(ErrorKind::kInternalInconsistency,
                "closed-form origin rate " + format_double(res.closed_form.total) +
                    " disagrees with the jet oracle " + format_double(res.oracle));
  }
  res.pass = sgn(res.closed_form.total_exact) > 0 && res.oracle > 0;
  return res;
}

bool VerificationReport::passed() const {
  return c1.pass && c2.result.pass && c3.has_value() && c3->pass;
}

VerificationReport verify(const ConstructionParams& p, const Poly& w, const VerifyOptions& opt) {
  p.validate();
  if (w.dimension() != p.n) {
    throw Error(ErrorKind::kDimensionMismatch, "polynomial dimension differs from n");
  }
  VerificationReport r;
  r.params = p;
  r.c1 = check_condition1(w);
  if (r.c1.pass) {
    if (opt.rho) {
      r.c2_searched = false;
      r.c2.result = check_condition2(w, *opt.rho, opt.sampling);
      r.c2.rho = *opt.rho;
      r.c2.trajectory.push_back({*opt.rho, r.c2.result.pass, r.c2.result.margin});
    } else {
      try {
        r.c2 = rho_search(w, opt.sampling);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kConstructionInvalid) throw;
        r.c2.result.pass = false;
      }
    }
  }
  try {
    r.c3 = check_condition3(w, p);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kInternalInconsistency) throw;
    r.c3_error = e.what();
  }
  if (r.c1.pass && r.c2.result.pass) {
    for (int j = 1; j <= p.n; ++j) {
      r.leading.push_back(check_leading_order(w, j, r.c2.rho, 4, opt.sampling.seed));
    }
  }
  return r;
}

std::string format_verification_report(const VerificationReport& r) {
  KeyValues kv;
  kv.set("alpha", r.params.alpha);
  kv.set("m", r.params.m);
  kv.set("n", r.params.n);
  kv.set("family", family_name(r.params.family));
  kv.set("steepness", r.params.steepness);
  kv.set("condition1", r.c1.pass ? "pass" : "fail");
  kv.set("condition1.detail", r.c1.detail);
  std::string diag;
  for (int i = 0; i < r.params.n; ++i) {
    diag += (i ? "," : "") + format_double(r.c1.origin.hessian(i, i));
  }
  kv.set("condition1.hessian_diagonal", diag);
  if (!r.c1.pass) {
    kv.set("condition2", "skipped");
  } else {
    kv.set("condition2", r.c2.result.pass ? "pass" : "fail");
    kv.set("condition2.rho", r.c2.rho);
    kv.set("condition2.margin", r.c2.result.margin);
    kv.set("condition2.samples", static_cast<long>(r.c2.result.samples));
    kv.set("condition2.exact_fallbacks", static_cast<long>(r.c2.result.exact_fallbacks));
    kv.set("condition2.searched", r.c2_searched);
    std::string traj;
    for (const auto& s : r.c2.trajectory) {
      traj += (traj.empty() ? "" : ",") + format_double(s.rho) + ":" + (s.pass ? "pass" : "fail");
    }
    kv.set("condition2.trajectory", traj);
    kv.set("condition2.monotone", r.c2.monotone ? "pass" : "fail");
    if (r.c2.result.failing) {
      const auto& f = *r.c2.result.failing;
      std::string pt, mn;
      for (double v : f.point) pt += (pt.empty() ? "" : ",") + format_double(v);
      for (double v : f.minors) mn += (mn.empty() ? "" : ",") + format_double(v);
      kv.set("condition2.failing_point", pt);
      kv.set("condition2.failing_minors", mn);
      kv.set("condition2.failing_verdict", verdict_name(f.verdict));
    }
  }
  for (const auto& l : r.leading) {
    kv.set("leading_order.j" + std::to_string(l.j), std::string(l.pass ? "pass" : "fail") +
                                                        " K=" + format_double(l.k_bound));
  }
  if (r.c3) {
    kv.set("condition3", r.c3->pass ? "pass" : "fail");
    kv.set("condition3.total", r.c3->closed_form.total);
    kv.set("condition3.total_exact", format_rational(r.c3->closed_form.total_exact));
    kv.set("condition3.oracle", r.c3->oracle);
    kv.set("condition3.rel_diff", r.c3->rel_diff);
    for (const auto& t : r.c3->closed_form.terms) kv.set("condition3.term." + t.name, t.value);
    if (r.params.family == Family::kCase2) kv.set("condition3.c_alpha_m", r.c3->closed_form.c_alpha_m);
  } else {
    kv.set("condition3", "internal-inconsistency");
    kv.set("condition3.error", r.c3_error);
  }
  kv.set("overall", r.passed() ? "pass" : "fail");
  return kv.format();
}

}  // namespace pmecc
