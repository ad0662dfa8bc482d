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

#include "pmecc/core/rate.hpp"

#include <algorithm>
#include <cmath>

namespace pmecc {

namespace {

template <typename T>
T oracle_impl(const Jet<T>& w, T alpha, T m) {
  const int n = w.dimension();
  if (!(w.value() > 0) && alpha > 0) {
    throw Error(ErrorKind::kDomain, "rate oracle needs a positive w value at " +
                                        format_point(w.base_point()));
  }
  if (w.valid_order() < kJetOrder) {
    throw Error(ErrorKind::kInvalidArgument, "rate oracle needs a jet valid to order 4");
  }
  Jet<T> wt;
  if (alpha == 0) {
    const Jet<T> v = jet_exp(w);
    const Jet<T> vt = pressure_time_derivative(v, m);
    wt = vt * jet_exp(w * T(-1));
  } else {
    const Jet<T> v = jet_power(w, static_cast<double>(1 / alpha));
    const Jet<T> vt = pressure_time_derivative(v, m);
    wt = (vt * jet_power(w, static_cast<double>(1 - 1 / alpha))) * alpha;
  }
  return wt.partial(MultiIndex::unit(n, 0, 2));
}

}  // namespace

double w11_rate_oracle(const Jet<double>& w, double alpha, double m) {
  return static_cast<double>(oracle_impl<long double>(jet_cast<long double>(w), alpha, m));
}

long double w11_rate_oracle(const Jet<long double>& w, long double alpha, long double m) {
  return oracle_impl<long double>(w, alpha, m);
}

DerivativeTable DerivativeTable::from_jet(const Jet<double>& jet) {
  DerivativeTable t;
  const int n = jet.dimension();
  t.n = n;
  t.w = jet.value();
  auto idx = [n](std::initializer_list<int> vars) {
    MultiIndex e = MultiIndex::zero(n);
    for (int v : vars) ++e[v];
    return e;
  };
  t.d1.resize(n);
  t.d2.resize(n * n);
  t.kk1.resize(n);
  t.k11.resize(n);
  t.kk11.resize(n);
  for (int k = 0; k < n; ++k) {
    t.d1[k] = jet.partial(idx({k}));
    for (int j = 0; j < n; ++j) t.d2[k * n + j] = jet.partial(idx({k, j}));
    t.kk1[k] = jet.partial(idx({k, k, 0}));
    t.k11[k] = jet.partial(idx({k, 0, 0}));
    t.kk11[k] = jet.partial(idx({k, k, 0, 0}));
  }
  return t;
}

double sum_terms(const std::vector<RateTerm>& terms) {
  double s = 0;
  for (const auto& t : terms) s += t.value;
  return s;
}

namespace {

struct Sums {
  double kk11 = 0, kk1 = 0, kk = 0, grad2 = 0, k_k1 = 0, k1sq = 0, k_k11 = 0;
};

Sums sums_of(const DerivativeTable& t) {
  Sums s;
  for (int k = 0; k < t.n; ++k) {
    s.kk11 += t.kk11[k];
    s.kk1 += t.kk1[k];
    s.kk += t.hess(k, k);
    s.grad2 += t.d1[k] * t.d1[k];
    s.k_k1 += t.d1[k] * t.hess(k, 0);
    s.k1sq += t.hess(0, k) * t.hess(0, k);
    s.k_k11 += t.d1[k] * t.k11[k];
  }
  return s;
}

}  // namespace

std::vector<RateTerm> printed_rate_terms(const DerivativeTable& t, double alpha, double m) {
  const Sums s = sums_of(t);
  const double b = 1 / alpha;
  const double w1 = t.d1[0];
  const double w11 = t.hess(0, 0);
  auto wp = [&](double e) { return std::pow(t.w, e); };
  const double K = b * (1 + (m - 1) * (1 - alpha));
  return {
      {"(m-1) w^(1/a) w_kk11", (m - 1) * wp(b) * s.kk11},
      {"2(m-1)/a w^(1/a-1) w_1 w_kk1", 2 * (m - 1) * b * wp(b - 1) * w1 * s.kk1},
      {"(m-1)/a (1/a-1) w^(1/a-2) w_1^2 w_kk", (m - 1) * b * (b - 1) * wp(b - 2) * w1 * w1 * s.kk},
      {"(m-1)/a w^(1/a-1) w_11 w_kk", (m - 1) * b * wp(b - 1) * w11 * s.kk},
      {"K (1/a-2)(1/a-1) w^(1/a-3) w_1^2 w_k^2", K * (b - 2) * (b - 1) * wp(b - 3) * w1 * w1 * s.grad2},
      {"K (1/a-1) w^(1/a-2) w_11 w_k^2", K * (b - 1) * wp(b - 2) * w11 * s.grad2},
      {"K 4(1/a-1) w^(1/a-2) w_1 w_k w_k1", K * 4 * (b - 1) * wp(b - 2) * w1 * s.k_k1},
      {"K 2 w^(1/a-1) w_1k^2", K * 2 * wp(b - 1) * s.k1sq},
      {"K 2 w^(1/a-1) w_k w_k11", K * 2 * wp(b - 1) * s.k_k11},
  };
}

namespace {

// Shared naming for the alpha = 0 audit; the chain-rule list has one extra row.
const char* const kLogNames[] = {
    "e^w w_kk11",       "e^w w_1 w_kk1",   "e^w w_1^2 w_kk", "e^w w_11 w_kk",   "e^w w_1^2 w_k^2",
    "e^w w_1 w_k w_k1", "e^w w_1k^2",      "e^w w_k w_k11",  "e^w w_11 w_k^2",
};

}  // namespace

std::vector<RateTerm> printed_log_rate_terms(const DerivativeTable& t, double m) {
  const Sums s = sums_of(t);
  const double e = std::exp(t.w);
  const double w1 = t.d1[0];
  const double w11 = t.hess(0, 0);
  return {
      {kLogNames[0], (m - 1) * e * s.kk11},
      {kLogNames[1], 2 * (m - 1) * e * w1 * s.kk1},
      {kLogNames[2], (m - 1) * e * w1 * w1 * s.kk},
      {kLogNames[3], (m - 1) * e * w11 * s.kk},
      {kLogNames[4], m * e * w1 * w1 * s.grad2},
      {kLogNames[5], m * e * w1 * s.k_k1},
      {kLogNames[6], 2 * m * e * s.k1sq},
      {kLogNames[7], 2 * m * e * s.k_k11},
  };
}

std::vector<RateTerm> chain_rule_log_rate_terms(const DerivativeTable& t, double m) {
  // w_t = (m-1) e^w lap(w) + m e^w |grad w|^2, differentiated twice in x_1.
  const Sums s = sums_of(t);
  const double e = std::exp(t.w);
  const double w1 = t.d1[0];
  const double w11 = t.hess(0, 0);
  return {
      {kLogNames[0], (m - 1) * e * s.kk11},
      {kLogNames[1], 2 * (m - 1) * e * w1 * s.kk1},
      {kLogNames[2], (m - 1) * e * w1 * w1 * s.kk},
      {kLogNames[3], (m - 1) * e * w11 * s.kk},
      {kLogNames[4], m * e * w1 * w1 * s.grad2},
      {kLogNames[5], 4 * m * e * w1 * s.k_k1},
      {kLogNames[6], 2 * m * e * s.k1sq},
      {kLogNames[7], 2 * m * e * s.k_k11},
      {kLogNames[8], m * e * w11 * s.grad2},
  };
}

std::vector<LogRateAuditRow> audit_log_rate(const DerivativeTable& t, double m, double rel_tol) {
  const auto printed = printed_log_rate_terms(t, m);
  const auto chain = chain_rule_log_rate_terms(t, m);
  double scale = 0;
  for (const auto& c : chain) scale = std::max(scale, std::fabs(c.value));
  std::vector<LogRateAuditRow> rows;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    LogRateAuditRow r;
    r.name = chain[i].name;
    r.chain_rule = chain[i].value;
    r.printed = i < printed.size() ? printed[i].value : 0.0;
    r.flagged = std::fabs(r.printed - r.chain_rule) > rel_tol * std::max(scale, 1e-300);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace pmecc
