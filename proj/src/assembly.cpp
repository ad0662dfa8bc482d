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

#include "pmecc/core/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pmecc/core/error.hpp"
#include "pmecc/core/jet.hpp"
#include "pmecc/core/keyvalue.hpp"
#include "pmecc/core/rate.hpp"
#include "pmecc/core/sampling.hpp"

namespace pmecc {

AlphaCase alpha_case(double alpha) {
  if (alpha == 0) return AlphaCase::kZero;
  if (alpha == 1) return AlphaCase::kOne;
  return AlphaCase::kFractional;
}

const char* glue_name(GlueMode g) { return g == GlueMode::kLiteral ? "literal" : "anchored"; }

GlueMode parse_glue(const std::string& s) {
  if (s == "literal") return GlueMode::kLiteral;
  if (s == "anchored") return GlueMode::kAnchored;
  throw Error(ErrorKind::kParse, "unknown glue mode '" + s + "'");
}

// ---------------------------------------------------------------- cutoff

namespace {

// g(t) = exp(-1/t) for t > 0 with its first two derivatives.
void bump(long double t, long double& g, long double& dg, long double& ddg) {
  if (t <= 0) {
    g = dg = ddg = 0;
    return;
  }
  g = std::exp(-1 / t);
  const long double t2 = t * t;
  dg = g / t2;
  ddg = g * (1 / (t2 * t2) - 2 / (t2 * t));
}

}  // namespace

void Cutoff::radial(long double r, long double& p, long double& dp, long double& ddp) const {
  const long double h = rho / 4.0L;
  const long double tau = (r - rho / 2.0L) / h;
  if (tau <= 0) {
    p = 1;
    dp = ddp = 0;
    return;
  }
  if (tau >= 1) {
    p = dp = ddp = 0;
    return;
  }
  long double a, da, dda, b, db, ddb;
  bump(tau, a, da, dda);
  bump(1 - tau, b, db, ddb);
  // q(tau) = g(1 - tau): q' = -g'(1 - tau), q'' = g''(1 - tau).
  const long double q = b, dq = -db, ddq = ddb;
  const long double D = a + q;
  const long double dD = da + dq;
  const long double N = da * q - a * dq;
  const long double S = a / D;
  const long double dS = N / (D * D);
  const long double ddS = (dda * q - a * ddq) / (D * D) - 2 * N * dD / (D * D * D);
  p = 1 - S;
  dp = -dS / h;
  ddp = -ddS / (h * h);
}

long double Cutoff::value(long double r) const {
  long double p, dp, ddp;
  radial(r, p, dp, ddp);
  return p;
}

Cutoff build_cutoff(double rho, int samples) {
  if (!(rho > 0)) throw Error(ErrorKind::kInvalidArgument, "cutoff radius must be positive");
  Cutoff c;
  c.rho = rho;
  double best = 0;
  for (int i = 0; i <= samples; ++i) {
    const long double r = rho * (0.5L + 0.25L * i / samples);
    long double p, dp, ddp;
    c.radial(r, p, dp, ddp);
    const long double hess = std::max(std::fabs(ddp), std::fabs(dp) / r);
    best = std::max(best, static_cast<double>(std::fabs(dp) + hess));
  }
  c.c_psi = best;
  return c;
}

// ---------------------------------------------------------------- profile

namespace {

// Outer closed form and its derivatives at r.
void outer(AlphaCase ac, long double alpha, long double rho, long double r, long double& f,
           long double& df, long double& ddf) {
  const long double d = rho - r;
  switch (ac) {
    case AlphaCase::kFractional:
      f = std::pow(d, alpha);
      df = -alpha * std::pow(d, alpha - 1);
      ddf = alpha * (alpha - 1) * std::pow(d, alpha - 2);
      return;
    case AlphaCase::kOne:
      f = rho * rho - r * r;
      df = -2 * r;
      ddf = -2;
      return;
    case AlphaCase::kZero:
      f = std::log(d);
      df = -1 / d;
      ddf = -1 / (d * d);
      return;
  }
}

}  // namespace

void RadialProfile::radial(long double r, long double& f, long double& df, long double& ddf) const {
  const long double q = rho / 4.0L;
  if (r <= q) {
    f = plateau_value;
    df = ddf = 0;
    return;
  }
  if (r >= rho / 2.0L) {
    outer(alpha_case, alpha, rho, r, f, df, ddf);
    return;
  }
  const long double t = (r - q) / q;
  const auto& c = middle;
  f = c[0] + t * (c[1] + t * (c[2] + t * (c[3] + t * (c[4] + t * c[5]))));
  const long double ft = c[1] + t * (2 * c[2] + t * (3 * c[3] + t * (4 * c[4] + t * 5 * c[5])));
  const long double ftt = 2 * c[2] + t * (6 * c[3] + t * (12 * c[4] + t * 20 * c[5]));
  df = ft / q;
  ddf = ftt / (q * q);
}

long double RadialProfile::value(long double r) const {
  long double f, df, ddf;
  radial(r, f, df, ddf);
  return f;
}

RadialProfile build_profile(double alpha, double rho) {
  if (!(rho > 0)) throw Error(ErrorKind::kInvalidArgument, "profile radius must be positive");
  family_for_alpha(alpha);
  RadialProfile p;
  p.alpha = alpha;
  p.rho = rho;
  p.alpha_case = alpha_case(alpha);
  const double half = rho / 2;
  switch (p.alpha_case) {
    case AlphaCase::kFractional: p.plateau_value = (1 + alpha / 4) * std::pow(half, alpha); break;
    case AlphaCase::kOne: p.plateau_value = 7 * rho * rho / 8; break;
    // The outer value at rho/2 is log(rho/2) itself; +1/4 leaves room to decrease.
    case AlphaCase::kZero: p.plateau_value = std::log(half) + 0.25; break;
  }
  long double g, dg, ddg;
  outer(p.alpha_case, alpha, rho, half, g, dg, ddg);
  const long double h = rho / 4.0L;
  const long double D = g - p.plateau_value;
  const long double G1 = dg * h;
  const long double G2 = ddg * h * h;
  p.middle = {p.plateau_value, 0, 0, static_cast<double>(10 * D - 4 * G1 + G2 / 2),
              static_cast<double>(-15 * D + 7 * G1 - G2), static_cast<double>(6 * D - 3 * G1 + G2 / 2)};
  p.derivative_bound_C = static_cast<double>(1 / std::min(std::fabs(dg), std::fabs(ddg)));

  // Monotone and concave on (0, rho), checked on a uniform radial sample.
  const double scale = std::max({std::fabs(static_cast<double>(dg)), std::fabs(static_cast<double>(ddg)) * rho, 1e-300});
  const int N = 10000;
  bool printed = true;
  for (int i = 1; i < N; ++i) {
    const long double r = rho * static_cast<long double>(i) / N;
    long double f, df, ddf;
    p.radial(r, f, df, ddf);
    if (df > 1e-12 * scale || ddf > 1e-12 * scale / rho) {
      std::ostringstream os;
      os << "profile not decreasing-concave at r = " << static_cast<double>(r) << " (f' = "
         << static_cast<double>(df) << ", f'' = " << static_cast<double>(ddf) << ")";
      throw Error(ErrorKind::kProfileConstruction, os.str());
    }
    if (r >= half && p.alpha_case == AlphaCase::kFractional) {
      if (df > -alpha * std::pow(half, alpha - 1) * (1 - 1e-12) ||
          ddf > alpha * (alpha - 1) * std::pow(half, alpha - 2) * (1 - 1e-12)) {
        printed = false;
      }
    }
    if (r >= half && (df > -1 / p.derivative_bound_C * (1 - 1e-12) ||
                      ddf > -1 / p.derivative_bound_C * (1 - 1e-12))) {
      throw Error(ErrorKind::kProfileConstruction, "outer derivative bound -1/C violated");
    }
  }
  p.printed_bounds_hold = printed;
  return p;
}

// ---------------------------------------------------------------- bundle

void AssemblyBundle::prepare() {
  const int n = params.n;
  wc_ = CompiledPoly(w);
  grad_.clear();
  hess_.clear();
  for (int i = 0; i < n; ++i) grad_.emplace_back(derive(w, i));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) hess_.emplace_back(hessian_entry(w, i, j));
  }
}

double AssemblyBundle::origin_offset() const {
  // psi(0) = 1 and F(0) is the plateau in every mode.
  return static_cast<double>(static_cast<long double>(amplitude) * profile.plateau_value - shift);
}

long double AssemblyBundle::w_tilde(const long double* x) const {
  const int n = params.n;
  long double r2 = 0;
  for (int i = 0; i < n; ++i) r2 += x[i] * x[i];
  const long double r = std::sqrt(r2);
  const long double F = profile.value(r);
  const long double ps = psi_identity ? 1.0L : psi.value(r);
  long double out = amplitude * F;
  if (ps != 0) out += ps * (wc_(x) - shift);
  return out;
}

SymMatrix AssemblyBundle::w_tilde_hessian(const double* x) const {
  const int n = params.n;
  double r2 = 0;
  for (int i = 0; i < n; ++i) r2 += x[i] * x[i];
  const double r = std::sqrt(r2);
  SymMatrix H(n);
  long double f, df, ddf;
  profile.radial(r, f, df, ddf);
  long double p = 1, dp = 0, ddp = 0;
  if (!psi_identity) psi.radial(r, p, dp, ddp);
  std::vector<double> u(n, 0.0);
  if (r > 0) {
    for (int i = 0; i < n; ++i) u[i] = x[i] / r;
  }
  // Radial Hessian g'' uu^T + (g'/r)(I - uu^T); zero when g is flat at r.
  auto radial_hess = [&](long double d1, long double d2, long double c, int i, int j) {
    if (d1 == 0 && d2 == 0) return 0.0L;
    const long double uu = static_cast<long double>(u[i]) * u[j];
    return c * (d2 * uu + d1 / r * ((i == j ? 1 : 0) - uu));
  };
  std::vector<double> gw(n);
  double wv = 0;
  if (p != 0) {
    for (int i = 0; i < n; ++i) gw[i] = grad_[i](x);
    wv = wc_(x) - shift;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      long double h = radial_hess(df, ddf, amplitude, i, j);
      if (p != 0) {
        h += p * hess_[i * n + j](x);
        h += radial_hess(dp, ddp, wv, i, j);
        h += dp * (u[i] * gw[j] + gw[i] * u[j]);
      }
      H(i, j) = static_cast<double>(h);
    }
  }
  return H;
}

long double AssemblyBundle::v0(const long double* x) const {
  const int n = params.n;
  long double r2 = 0;
  for (int i = 0; i < n; ++i) r2 += x[i] * x[i];
  const long double rho_l = params.rho;
  if (r2 >= rho_l * rho_l) return 0;
  const long double wt = w_tilde(x);
  switch (profile.alpha_case) {
    case AlphaCase::kZero: return std::exp(wt);
    case AlphaCase::kOne:
      if (wt < 0) break;
      return wt;
    case AlphaCase::kFractional:
      if (wt < 0) break;
      return std::pow(wt, 1 / static_cast<long double>(params.alpha));
  }
  std::vector<double> pt(x, x + n);
  throw Error(ErrorKind::kDomain, "glued function is negative at " + format_point(pt) +
                                      " (value " + format_double(static_cast<double>(wt)) + ")");
}

// ---------------------------------------------------------------- checks

namespace {

struct ShellSample {
  std::vector<std::vector<double>> points;
};

// Halton directions with Halton radii in [lo, hi], plus axis and diagonal rays.
std::vector<std::vector<double>> shell_samples(int n, int count, double lo, double hi,
                                               std::uint64_t seed) {
  auto dirs = unit_sphere_samples(n, count, seed);
  const int rb = first_primes(n + 1).back();
  std::vector<std::vector<double>> out;
  out.reserve(dirs.size() + 400);
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const double r = lo + (hi - lo) * radical_inverse(i + 1 + seed * 7919, rb);
    for (double& v : dirs[i]) v *= r;
    out.push_back(std::move(dirs[i]));
  }
  std::vector<std::vector<double>> rays;
  for (int d = 0; d < n; ++d) {
    for (int s : {1, -1}) {
      std::vector<double> e(n, 0.0);
      e[d] = s;
      rays.push_back(e);
    }
  }
  for (int mask = 0; mask < (1 << std::min(n, 6)); ++mask) {
    std::vector<double> e(n, 1.0 / std::sqrt(double(n)));
    for (int d = 0; d < n; ++d) {
      if ((mask >> d) & 1) e[d] = -e[d];
    }
    rays.push_back(e);
  }
  const int K = 12;
  for (const auto& e : rays) {
    for (int k = 0; k < K; ++k) {
      const double r = lo * std::pow(hi / lo, static_cast<double>(k) / (K - 1));
      std::vector<double> x(n);
      for (int d = 0; d < n; ++d) x[d] = e[d] * r;
      out.push_back(std::move(x));
    }
  }
  return out;
}

struct SampledChecks {
  double annulus = -std::numeric_limits<double>::infinity();
  double inner = -std::numeric_limits<double>::infinity();
  double min_wt = std::numeric_limits<double>::infinity();
};

SampledChecks sampled_checks(const AssemblyBundle& b, int samples, std::uint64_t seed) {
  const int n = b.dimension();
  const double rho = b.rho();
  const double eps = rho / 100;
  SampledChecks s;
  std::vector<long double> xl(n);
  auto visit = [&](const std::vector<double>& x, double& slot) {
    const SymMatrix H = b.w_tilde_hessian(x.data());
    slot = std::max(slot, jacobi_eigenvalues(H).front());
    for (int d = 0; d < n; ++d) xl[d] = x[d];
    s.min_wt = std::min(s.min_wt, static_cast<double>(b.w_tilde(xl.data())));
  };
  for (const auto& x : shell_samples(n, samples, rho / 2, rho - eps, seed)) visit(x, s.annulus);
  for (const auto& x : shell_samples(n, samples, rho / 100, rho / 2, seed + 1)) visit(x, s.inner);
  return s;
}

double shifted_origin_rate(const AssemblyBundle& b) {
  const int n = b.dimension();
  Jet<double> jet = jet_cast<double>(jet_from_poly(b.w, std::vector<Rational>(n, Rational(0))));
  jet.coefficient_at(0) += b.origin_offset();
  if (b.profile.alpha_case != AlphaCase::kZero && !(jet.value() > 0)) {
    return -std::numeric_limits<double>::infinity();
  }
  return w11_rate_oracle(jet, b.params.alpha, exact_m(b.params.m).get_d());
}

void fill_report(const AssemblyBundle& b, const AssemblyOptions& opt, const SampledChecks& s,
                 AssemblyReport* r) {
  r->annulus_max_eigenvalue = s.annulus;
  r->inner_max_eigenvalue = s.inner;
  r->global_max_eigenvalue = std::max(s.annulus, s.inner);
  r->min_w_tilde = s.min_wt;
  const std::vector<double> origin(b.dimension(), 0.0);
  const auto ev = jacobi_eigenvalues(b.w_tilde_hessian(origin.data()));
  r->origin_zero_eigenvalues = 0;
  r->origin_negative_eigenvalues = 0;
  for (double e : ev) {
    if (e == 0) {
      ++r->origin_zero_eigenvalues;
    } else if (e < 0) {
      ++r->origin_negative_eigenvalues;
    }
  }
  boundary_gradient(b, opt.samples, opt.seed, &r->boundary_gradient_floor,
                    &r->boundary_closed_form_min, &r->boundary_rel_error);
  r->origin_offset = b.origin_offset();
  r->shifted_rate = shifted_origin_rate(b);
  r->rate_transfer = r->shifted_rate > 0;
  const bool positive = b.profile.alpha_case == AlphaCase::kZero || s.min_wt > 0;
  r->passed = s.annulus <= opt.threshold && s.inner < 0 && positive &&
              r->origin_zero_eigenvalues == 1 && r->origin_negative_eigenvalues == b.dimension() - 1 &&
              r->boundary_gradient_floor > 0;
}

}  // namespace

double bundle_origin_rate(const AssemblyBundle& b) { return shifted_origin_rate(b); }

void boundary_gradient(const AssemblyBundle& b, int samples, std::uint64_t seed, double* floor,
                       double* closed_form_min, double* max_rel_error) {
  const int n = b.dimension();
  const long double rho = b.rho();
  const long double d = rho * 1e-4L;
  const auto dirs = unit_sphere_samples(n, samples, seed + 17);
  double fl = std::numeric_limits<double>::infinity();
  double cf_min = std::numeric_limits<double>::infinity();
  double err = 0;
  std::vector<long double> x(n);
  auto at = [&](const std::vector<double>& u, long double r) {
    for (int i = 0; i < n; ++i) x[i] = u[i] * r;
    return b.v0(x.data());
  };
  for (const auto& u : dirs) {
    // Inward second-order one-sided difference; v0 vanishes on the sphere.
    const long double v1 = at(u, rho - d);
    const long double v2 = at(u, rho - 2 * d);
    const long double v0b = 0;
    const long double g = std::fabs((-3 * v0b + 4 * v1 - v2) / (2 * d));
    long double closed = 0;
    switch (b.profile.alpha_case) {
      case AlphaCase::kFractional:
        closed = std::pow(static_cast<long double>(b.amplitude), 1 / static_cast<long double>(b.params.alpha));
        break;
      case AlphaCase::kOne: closed = 2 * static_cast<long double>(b.amplitude) * rho; break;
      case AlphaCase::kZero: {
        std::vector<long double> xb(n);
        for (int i = 0; i < n; ++i) xb[i] = u[i] * rho;
        std::vector<long double> xs(xb);
        long double wv = evaluate(b.w, xs);
        closed = std::exp(wv - static_cast<long double>(b.shift));
        break;
      }
    }
    fl = std::min(fl, static_cast<double>(g));
    cf_min = std::min(cf_min, static_cast<double>(closed));
    err = std::max(err, static_cast<double>(std::fabs(g - closed) / closed));
  }
  *floor = fl;
  *closed_form_min = cf_min;
  *max_rel_error = err;
}

AssemblyBundle assemble(const ConstructionParams& params, const Poly& w, const AssemblyOptions& opt,
                        AssemblyReport* report) {
  params.validate();
  if (!(params.rho > 0)) {
    throw Error(ErrorKind::kInvalidArgument, "assembly needs the verified radius rho");
  }
  AssemblyBundle b;
  b.params = params;
  b.w = w;
  b.psi = build_cutoff(params.rho);
  b.profile = build_profile(params.alpha, params.rho);
  b.glue = opt.glue;
  b.psi_identity = b.profile.alpha_case == AlphaCase::kZero;
  b.prepare();
  AssemblyReport r;

  if (b.psi_identity) {
    b.amplitude = 1;
    b.shift = opt.glue == GlueMode::kAnchored ? b.profile.plateau_value : 0;
    fill_report(b, opt, sampled_checks(b, opt.samples, opt.seed), &r);
  } else if (opt.glue == GlueMode::kAnchored) {
    b.amplitude = 1 / b.profile.plateau_value;
    b.shift = 1;
    fill_report(b, opt, sampled_checks(b, opt.samples, opt.seed), &r);
  } else {
    b.shift = 0;
    b.amplitude = 1;
    for (r.doublings = 0;; ++r.doublings) {
      const SampledChecks s = sampled_checks(b, opt.samples, opt.seed);
      if ((s.annulus <= opt.threshold && s.inner < 0 && s.min_wt > 0) ||
          r.doublings == opt.max_doublings) {
        fill_report(b, opt, s, &r);
        break;
      }
      b.amplitude *= 2;
    }
  }
  b.params.amplitude = b.amplitude;
  b.boundary_gradient_floor = r.boundary_gradient_floor;
  if (report) *report = r;
  if (!r.passed) {
    std::ostringstream os;
    os << glue_name(opt.glue) << " assembly infeasible at rho = " << params.rho
       << ": annulus max eigenvalue " << r.annulus_max_eigenvalue << ", inner "
       << r.inner_max_eigenvalue << ", min wt " << r.min_w_tilde << ", A = " << b.amplitude;
    throw Error(ErrorKind::kAssemblyInfeasible, os.str());
  }
  return b;
}

AssemblyReport inspect_bundle(const AssemblyBundle& b, const AssemblyOptions& opt) {
  AssemblyReport r;
  fill_report(b, opt, sampled_checks(b, opt.samples, opt.seed), &r);
  return r;
}

AutoAssemblyResult assemble_driver(const ConstructionParams& params, const Poly& w,
                                   const std::string& glue, const AssemblyOptions& opt,
                                   const SamplingOptions& sampling) {
  AutoAssemblyResult out;
  if (glue != "auto" && glue != "literal" && glue != "anchored") {
    throw Error(ErrorKind::kInvalidArgument, "glue must be auto, literal or anchored");
  }
  if (glue != "anchored") {
    AssemblyOptions lit = opt;
    lit.glue = GlueMode::kLiteral;
    try {
      out.bundle = assemble(params, w, lit, &out.report);
      out.log.push_back("literal gluing: A = " + format_double(out.bundle.amplitude) +
                        ", shifted origin rate = " + format_double(out.report.shifted_rate));
      if (glue == "literal" || out.report.rate_transfer) return out;
      out.log.push_back("literal gluing loses the origin rate; switching to anchored gluing");
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kAssemblyInfeasible || glue == "literal") throw;
      out.log.push_back(std::string("literal gluing failed: ") + e.what());
    }
  }
  AssemblyOptions anc = opt;
  anc.glue = GlueMode::kAnchored;
  ConstructionParams p = params;
  for (int k = 0; k <= 20; ++k) {
    if (k > 0) {
      p.rho /= 2;
      const Condition2Result c2 = check_condition2(w, p.rho, sampling);
      out.log.push_back("rho = " + format_double(p.rho) + ": condition (2) " +
                        (c2.pass ? "pass" : "fail"));
      if (!c2.pass) continue;
    }
    try {
      out.bundle = assemble(p, w, anc, &out.report);
      out.log.push_back("anchored gluing feasible at rho = " + format_double(p.rho));
      return out;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kAssemblyInfeasible) throw;
      out.log.push_back(e.what());
    }
  }
  throw Error(ErrorKind::kAssemblyInfeasible, "anchored gluing infeasible after 20 halvings of rho");
}

// ---------------------------------------------------------------- manifest

std::string format_manifest(const AssemblyBundle& b) {
  KeyValues kv;
  kv.set("format", "pmecc-bundle-1");
  std::istringstream ps(format_params(b.params));
  std::string line;
  while (std::getline(ps, line)) {
    const auto eq = line.find('=');
    kv.set("params." + line.substr(0, eq), line.substr(eq + 1));
  }
  kv.set("glue", glue_name(b.glue));
  kv.set("amplitude", b.amplitude);
  kv.set("shift", b.shift);
  kv.set("psi_identity", b.psi_identity);
  kv.set("psi.rho", b.psi.rho);
  kv.set("psi.c_psi", b.psi.c_psi);
  kv.set("profile.alpha", b.profile.alpha);
  kv.set("profile.rho", b.profile.rho);
  kv.set("profile.plateau", b.profile.plateau_value);
  for (int i = 0; i < 6; ++i) kv.set("profile.middle." + std::to_string(i), b.profile.middle[i]);
  kv.set("profile.C", b.profile.derivative_bound_C);
  kv.set("boundary_gradient_floor", b.boundary_gradient_floor);
  std::istringstream ws(format_poly(b.w));
  int k = 0;
  while (std::getline(ws, line)) kv.set("poly." + std::to_string(k++), line);
  return kv.format();
}

AssemblyBundle parse_manifest(const std::string& text) {
  const KeyValues kv = KeyValues::parse(text);
  if (kv.require("format") != "pmecc-bundle-1") {
    throw Error(ErrorKind::kParse, "unsupported bundle manifest format");
  }
  std::string params_text, poly_text;
  for (const auto& [k, v] : kv.entries()) {
    if (k.rfind("params.", 0) == 0) params_text += k.substr(7) + "=" + v + "\n";
    if (k.rfind("poly.", 0) == 0) poly_text += v + "\n";
  }
  AssemblyBundle b;
  b.params = parse_params(params_text);
  b.w = parse_poly(poly_text);
  if (b.w.dimension() != b.params.n) {
    throw Error(ErrorKind::kParse, "manifest polynomial dimension differs from n");
  }
  b.glue = parse_glue(kv.require("glue"));
  b.amplitude = kv.require_double("amplitude");
  b.shift = kv.require_double("shift");
  b.psi_identity = kv.require_bool("psi_identity");
  b.psi = build_cutoff(kv.require_double("psi.rho"));
  b.profile = build_profile(kv.require_double("profile.alpha"), kv.require_double("profile.rho"));
  for (int i = 0; i < 6; ++i) {
    if (kv.require_double("profile.middle." + std::to_string(i)) != b.profile.middle[i]) {
      throw Error(ErrorKind::kParse, "manifest profile coefficients do not match a rebuild");
    }
  }
  b.boundary_gradient_floor = kv.require_double("boundary_gradient_floor");
  b.prepare();
  return b;
}

std::string format_assembly_report(const AssemblyBundle& b, const AssemblyReport& r) {
  KeyValues kv;
  kv.set("glue", glue_name(b.glue));
  kv.set("rho", b.rho());
  kv.set("amplitude", b.amplitude);
  kv.set("shift", b.shift);
  kv.set("doublings", r.doublings);
  kv.set("c_psi", b.psi.c_psi);
  kv.set("profile.plateau", b.profile.plateau_value);
  kv.set("profile.C", b.profile.derivative_bound_C);
  kv.set("profile.printed_bounds", b.profile.printed_bounds_hold ? "pass" : "fail");
  kv.set("annulus_max_eigenvalue", r.annulus_max_eigenvalue);
  kv.set("inner_max_eigenvalue", r.inner_max_eigenvalue);
  kv.set("global_max_eigenvalue", r.global_max_eigenvalue);
  kv.set("min_w_tilde", r.min_w_tilde);
  kv.set("origin.zero_eigenvalues", r.origin_zero_eigenvalues);
  kv.set("origin.negative_eigenvalues", r.origin_negative_eigenvalues);
  kv.set("boundary_gradient_floor", r.boundary_gradient_floor);
  kv.set("boundary_closed_form_min", r.boundary_closed_form_min);
  kv.set("boundary_rel_error", r.boundary_rel_error);
  kv.set("origin_offset", r.origin_offset);
  kv.set("shifted_origin_rate", r.shifted_rate);
  kv.set("rate_transfer", r.rate_transfer ? "pass" : "fail");
  kv.set("assembly", r.passed ? "pass" : "fail");
  return kv.format();
}

AssemblyBundle rescale_bundle(const AssemblyBundle& b, double target_rho) {
  const Rational s = rational_from_double(target_rho) / rational_from_double(b.rho());
  AssemblyBundle out;
  out.params = b.params;
  out.params.rho = target_rho;
  // w'(y) = w(y / s): a degree-d monomial picks up s^-d.
  out.w = Poly(b.w.dimension(), b.w.radicand());
  for (const auto& [idx, c] : b.w.terms()) {
    Rational f = 1;
    for (int k = 0; k < idx.order(); ++k) f /= s;
    out.w.add_term(idx, c * Surd(f));
  }
  out.psi = build_cutoff(target_rho);
  out.profile = build_profile(b.params.alpha, target_rho);
  out.glue = b.glue;
  out.psi_identity = b.psi_identity;
  const double sd = s.get_d();
  switch (out.profile.alpha_case) {
    case AlphaCase::kFractional:
      out.amplitude = b.amplitude * std::pow(sd, -b.params.alpha);
      out.shift = b.shift;
      break;
    case AlphaCase::kOne:
      out.amplitude = b.amplitude / (sd * sd);
      out.shift = b.shift;
      break;
    case AlphaCase::kZero:
      out.amplitude = 1;
      out.shift = b.shift + std::log(sd);
      break;
  }
  out.params.amplitude = out.amplitude;
  out.prepare();
  return out;
}

}  // namespace pmecc
