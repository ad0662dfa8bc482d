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

#include <string>
#include <vector>

#include "pmecc/core/poly.hpp"

namespace pmecc {

enum class Family { kCase1, kCase2 };

const char* family_name(Family f);
Family parse_family(const std::string& name);

// Case 1 covers [0, 1/2) and {1}; Case 2 covers (1/2, 1). Throws family-range otherwise.
Family family_for_alpha(double alpha);

struct ConstructionParams {
  double alpha = 1;
  double m = 2;
  int n = 3;
  Family family = Family::kCase1;
  double steepness = 0;  // a for Case 1, b for Case 2
  double rho = 0;        // 0 until verified
  double amplitude = 0;  // 0 until assembled

  void validate() const;
};

// Exact rational stand-ins for the real parameters.
Rational exact_alpha(double alpha);
Rational exact_m(double m);
Rational exact_steepness(double s);

// s^2 = 3/2 - alpha for Case 2.
Rational case2_radicand(double alpha);

Poly build_case1(double alpha, int n, double a);
Poly build_case2(double alpha, int n, double b);
Poly build_family(const ConstructionParams& p);

struct BreakdownTerm {
  std::string name;
  Rational exact;
  double value = 0;
};

// For alpha = 0 the displayed polynomial in a is the rate divided by
// e^{w(0)} = e; `exact` values carry the display and `value`/`total` carry
// the rate itself, so total = prefactor * total_exact.
struct RateBreakdown {
  double total = 0;
  Rational total_exact;
  double prefactor = 1;
  std::vector<BreakdownTerm> terms;
  double c_alpha_m = 0;  // Case 2 only
  Rational c_alpha_m_exact;
};

// Closed-form d/dt w_11 at the origin, split into the displayed summands.
RateBreakdown origin_rate(const ConstructionParams& p);

// The five unsimplified Case 2 summands (before collecting terms).
RateBreakdown case2_raw_rate(const ConstructionParams& p);

// C_{alpha,m} of the simplified Case 2 display.
Rational c_alpha_m(double alpha, double m);

// Smallest grid value 0.1 * 1.05^k (k < 500) with origin rate >= margin * |leading term|
// whose double is also positive. Throws search-exhausted otherwise.
double solve_steepness(double alpha, double m, int n, double margin = 0.5);

// The always-negative leading summand used by the margin rule.
double leading_negative_term(const ConstructionParams& p);

std::string format_params(const ConstructionParams& p);
ConstructionParams parse_params(const std::string& text);

std::string format_rate_breakdown(const RateBreakdown& r);

}  // namespace pmecc
