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

#include "pmecc/core/jet.hpp"

namespace pmecc {

// Pressure equation right-hand side (m-1) v lap(v) + |grad v|^2 as a jet.
// Two derivatives are consumed, so the result is valid to order kJetOrder-2.
template <typename T>
Jet<T> pressure_time_derivative(const Jet<T>& v, const T& m) {
  const int n = v.dimension();
  Jet<T> lap(n, v.base_point());
  Jet<T> grad2(n, v.base_point());
  for (int k = 0; k < n; ++k) {
    Jet<T> dk = jet_derive(v, k);
    lap += jet_derive(dk, k);
    grad2 += dk * dk;
  }
  return (v * lap) * (m - T(1)) + grad2;
}

// d/dt w_11 at the base point, where w = v^alpha (w = log v when alpha = 0)
// and v solves the pressure equation. Derived purely by jet algebra.
double w11_rate_oracle(const Jet<double>& w, double alpha, double m);
long double w11_rate_oracle(const Jet<long double>& w, long double alpha, long double m);

// Point values of the derivatives entering the closed-form rate formulas.
struct DerivativeTable {
  int n = 0;
  double w = 0;
  std::vector<double> d1;       // w_k
  std::vector<double> d2;       // w_ij, row-major
  std::vector<double> kk1;      // w_kk1
  std::vector<double> k11;      // w_k11
  std::vector<double> kk11;     // w_kk11

  static DerivativeTable from_jet(const Jet<double>& w);
  double hess(int i, int j) const { return d2[i * n + j]; }
};

struct RateTerm {
  std::string name;
  double value = 0;
};

double sum_terms(const std::vector<RateTerm>& terms);

// The nine summands of the alpha > 0 formula, with sums over k = 1..n.
std::vector<RateTerm> printed_rate_terms(const DerivativeTable& t, double alpha, double m);

// The eight summands of the alpha = 0 formula exactly as printed.
std::vector<RateTerm> printed_log_rate_terms(const DerivativeTable& t, double m);

// The alpha = 0 expansion obtained from the chain rule, one entry per monomial.
std::vector<RateTerm> chain_rule_log_rate_terms(const DerivativeTable& t, double m);

struct LogRateAuditRow {
  std::string name;
  double printed = 0;
  double chain_rule = 0;
  bool flagged = false;
};

// Termwise comparison of the printed alpha = 0 formula with the chain rule.
std::vector<LogRateAuditRow> audit_log_rate(const DerivativeTable& t, double m, double rel_tol = 1e-9);

}  // namespace pmecc
