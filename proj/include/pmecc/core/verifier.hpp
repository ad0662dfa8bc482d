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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pmecc/core/construction.hpp"
#include "pmecc/core/linalg.hpp"
#include "pmecc/core/poly.hpp"
#include "pmecc/core/sampling.hpp"

namespace pmecc {

enum class Verdict { kNegativeDefinite, kNegativeSemidefinite, kIndefinite };

const char* verdict_name(Verdict v);

struct HessianReport {
  std::vector<double> point;
  SymMatrix hessian;
  std::vector<double> minors;     // leading principal minors, j = 1..n
  std::vector<int> minor_signs;   // exact signs
  double max_eigenvalue = 0;      // cyclic Jacobi
  double gershgorin = 0;          // Gershgorin upper bound
  Verdict verdict = Verdict::kIndefinite;
};

// Hessian of a fixed polynomial with exact and filtered evaluation paths.
class HessianField {
 public:
  explicit HessianField(const Poly& w);

  int dimension() const { return n_; }
  const Poly& entry(int i, int j) const { return exact_[i * n_ + j]; }

  SymMatrix evaluate(const std::vector<double>& x) const;
  // Exact signs of the leading minors at a point with dyadic coordinates.
  // Uses a certified floating-point filter first; `used_exact` reports fallback.
  std::vector<int> minor_signs(const std::vector<double>& x, std::vector<double>* values,
                               bool* used_exact) const;
  std::vector<int> minor_signs_exact(const std::vector<double>& x) const;

  HessianReport report(const std::vector<double>& x) const;

 private:
  struct Term {
    double coeff;
    double err;
    std::vector<int> exps;
  };
  int n_;
  std::vector<Poly> exact_;
  std::vector<std::vector<Term>> filtered_;
};

struct Condition1Result {
  bool pass = false;
  HessianReport origin;
  std::string detail;
};

Condition1Result check_condition1(const Poly& w);

struct SamplingOptions {
  std::uint64_t seed = 0;
  BallSampleSpec spec;
  int threads = 1;
};

struct Condition2Result {
  bool pass = false;
  double rho = 0;
  double margin = 0;
  std::size_t samples = 0;
  std::size_t exact_fallbacks = 0;
  std::optional<HessianReport> failing;
};

Condition2Result check_condition2(const Poly& w, double rho, const SamplingOptions& opt = {});

struct RhoSearchStep {
  double rho = 0;
  bool pass = false;
  double margin = 0;
};

struct RhoSearchResult {
  double rho = 0;
  Condition2Result result;
  std::vector<RhoSearchStep> trajectory;
  bool monotone = true;  // the check at rho/2 also passed
};

// Halves from 1/2 until condition (2) passes; at most 30 halvings.
RhoSearchResult rho_search(const Poly& w, const SamplingOptions& opt = {});

Poly hessian_entry(const Poly& w, int i, int j);
Poly leading_minor_poly(const Poly& w, int j);
// Lowest-degree homogeneous part of the j-th leading minor.
Poly minor_leading_order(const Poly& w, int j);
// The closed-form quadratic form times constant displayed for each family.
Poly displayed_minor_form(const ConstructionParams& p, int j);

struct LeadingOrderCheck {
  int j = 0;
  std::vector<double> scale_ratios;  // max |det - lead| / |x|^3 per dyadic scale
  double k_bound = 0;
  bool pass = false;
};

LeadingOrderCheck check_leading_order(const Poly& w, int j, double rho, int scales = 4,
                                      std::uint64_t seed = 0);

struct Condition3Result {
  bool pass = false;
  RateBreakdown closed_form;
  double oracle = 0;
  double rel_diff = 0;
};

// Throws internal-inconsistency when closed form and oracle disagree beyond 1e-9.
Condition3Result check_condition3(const Poly& w, const ConstructionParams& p);

struct VerifyOptions {
  SamplingOptions sampling;
  std::optional<double> rho;  // skip the search
};

struct VerificationReport {
  ConstructionParams params;
  Condition1Result c1;
  RhoSearchResult c2;
  bool c2_searched = true;
  std::optional<Condition3Result> c3;
  std::string c3_error;  // set when the oracle disagreed with the closed form
  std::vector<LeadingOrderCheck> leading;
  bool passed() const;
};

VerificationReport verify(const ConstructionParams& p, const Poly& w, const VerifyOptions& opt = {});
std::string format_verification_report(const VerificationReport& r);

}  // namespace pmecc
