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

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pmecc/core/construction.hpp"
#include "pmecc/core/linalg.hpp"
#include "pmecc/core/poly.hpp"
#include "pmecc/core/verifier.hpp"

namespace pmecc {

enum class AlphaCase { kFractional, kOne, kZero };

AlphaCase alpha_case(double alpha);

// Radial C-infinity cutoff: 1 on [0, rho/2], 0 on [3 rho/4, inf), built from
// the smooth step S(t) = g(t) / (g(t) + g(1-t)), g(t) = exp(-1/t).
struct Cutoff {
  double rho = 0;
  double c_psi = 0;  // sampled max of |psi'| + max(|psi''|, |psi'|/r)

  // psi and its first two radial derivatives.
  void radial(long double r, long double& p, long double& dp, long double& ddp) const;
  long double value(long double r) const;
};

Cutoff build_cutoff(double rho, int samples = 10000);

// f(r): plateau on [0, rho/4], quintic Hermite on [rho/4, rho/2], closed form on [rho/2, rho].
struct RadialProfile {
  AlphaCase alpha_case = AlphaCase::kOne;
  double alpha = 1;
  double rho = 0;
  double plateau_value = 0;
  std::array<double, 6> middle{};  // coefficients in t = (r - rho/4) / (rho/4)
  double derivative_bound_C = 0;   // f', f'' <= -1/C on [rho/2, rho)
  bool printed_bounds_hold = false;  // f' <= -a(rho/2)^(a-1), f'' <= a(a-1)(rho/2)^(a-2)

  void radial(long double r, long double& f, long double& df, long double& ddf) const;
  long double value(long double r) const;
};

RadialProfile build_profile(double alpha, double rho);

enum class GlueMode { kLiteral, kAnchored };

const char* glue_name(GlueMode g);
GlueMode parse_glue(const std::string& s);

// wt = A F + psi (w - shift), v0 = wt^(1/alpha) | wt | exp(wt).
// The literal gluing has shift = 0; the anchored gluing picks A and shift so
// that wt equals w near the origin.
class AssemblyBundle {
 public:
  ConstructionParams params;
  Poly w;
  Cutoff psi;
  RadialProfile profile;
  GlueMode glue = GlueMode::kLiteral;
  double amplitude = 1;
  double shift = 0;
  bool psi_identity = false;  // alpha = 0 uses psi = 1
  double boundary_gradient_floor = 0;

  void prepare();  // compiles the evaluators; call after editing fields

  int dimension() const { return params.n; }
  double rho() const { return params.rho; }

  long double w_tilde(const long double* x) const;
  SymMatrix w_tilde_hessian(const double* x) const;
  // Initial pressure; zero outside the closed ball. Throws domain on wt < 0 inside.
  long double v0(const long double* x) const;
  // wt(0) - w(0): the constant added to w near the origin.
  double origin_offset() const;

 private:
  CompiledPoly wc_;
  std::vector<CompiledPoly> grad_;
  std::vector<CompiledPoly> hess_;
};

struct AssemblyOptions {
  GlueMode glue = GlueMode::kLiteral;
  std::uint64_t seed = 0;
  int samples = 10000;
  int max_doublings = 50;
  double threshold = -1e-6;  // required max eigenvalue of D^2 wt on the annulus
};

struct AssemblyReport {
  int doublings = 0;
  double annulus_max_eigenvalue = 0;
  double inner_max_eigenvalue = 0;    // on rho/100 <= |x| < rho/2
  double global_max_eigenvalue = 0;   // on rho/100 <= |x| <= rho - eps
  double min_w_tilde = 0;
  int origin_zero_eigenvalues = 0;
  int origin_negative_eigenvalues = 0;
  double boundary_gradient_floor = 0;
  double boundary_closed_form_min = 0;
  double boundary_rel_error = 0;
  double shifted_rate = 0;       // origin rate of the wt jet
  double origin_offset = 0;
  bool rate_transfer = false;
  bool passed = false;
};

// Glues the verified w into global data on B_rho (params.rho must be set).
AssemblyBundle assemble(const ConstructionParams& params, const Poly& w, const AssemblyOptions& opt,
                        AssemblyReport* report);

struct AutoAssemblyResult {
  AssemblyBundle bundle;
  AssemblyReport report;
  std::vector<std::string> log;
};

// glue "auto": literal when the shifted origin rate stays positive, anchored
// otherwise; the anchored gluing halves rho (re-verifying condition (2)) until feasible.
AutoAssemblyResult assemble_driver(const ConstructionParams& params, const Poly& w,
                                   const std::string& glue, const AssemblyOptions& opt,
                                   const SamplingOptions& sampling);

// d/dt w_11 at the origin for the glued data (the w jet shifted by origin_offset).
double bundle_origin_rate(const AssemblyBundle& b);

// Re-checks a bundle (used after loading a manifest).
AssemblyReport inspect_bundle(const AssemblyBundle& b, const AssemblyOptions& opt);

// Boundary gradient by second-order one-sided differences along the inward normal.
void boundary_gradient(const AssemblyBundle& b, int samples, std::uint64_t seed, double* floor,
                       double* closed_form_min, double* max_rel_error);

std::string format_manifest(const AssemblyBundle& b);
AssemblyBundle parse_manifest(const std::string& text);
std::string format_assembly_report(const AssemblyBundle& b, const AssemblyReport& r);

// Rescales a bundle to B_target (x -> x * target / rho) with the same verdicts.
AssemblyBundle rescale_bundle(const AssemblyBundle& b, double target_rho);

}  // namespace pmecc
