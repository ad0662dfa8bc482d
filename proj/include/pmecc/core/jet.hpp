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

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "pmecc/core/error.hpp"
#include "pmecc/core/poly.hpp"

namespace pmecc {

// Truncation order of every jet. The time-derivative formulas need w_kk11.
inline constexpr int kJetOrder = 4;

// Monomials of order <= kJetOrder in a fixed dimension, plus the truncated
// product table. Built once per dimension and shared.
struct JetLayout {
  int dim = 0;
  std::vector<MultiIndex> indices;
  std::vector<int> orders;
  std::vector<long> factorials;
  struct Product {
    int a, b, c;
  };
  std::vector<Product> products;
  // shift[var][k]: position of indices[k] + e_var, or -1 beyond the order.
  std::vector<std::vector<int>> shift;

  static const JetLayout& get(int dim);
  int find(const MultiIndex& idx) const;
};

std::string format_point(const std::vector<double>& x);

enum class JetOp { kAdd, kSub, kMul };

template <typename T>
class Jet {
 public:
  Jet() = default;
  Jet(int dim, std::vector<double> base)
      : layout_(&JetLayout::get(dim)), base_(std::move(base)),
        coeffs_(layout_->indices.size(), T(0)) {
    if (static_cast<int>(base_.size()) != dim) {
      throw Error(ErrorKind::kDimensionMismatch, "jet base point length differs from dimension");
    }
  }

  static Jet constant(int dim, std::vector<double> base, const T& c) {
    Jet j(dim, std::move(base));
    j.coeffs_[0] = c;
    return j;
  }
  // Jet of the coordinate function x_var, whose value at the base is `value`.
  static Jet coordinate(int dim, std::vector<double> base, int var, const T& value) {
    Jet j(dim, std::move(base));
    j.coeffs_[0] = value;
    j.coeffs_[j.layout_->find(MultiIndex::unit(dim, var))] = T(1);
    return j;
  }

  int dimension() const { return layout_->dim; }
  const std::vector<double>& base_point() const { return base_; }
  // Highest order whose coefficients are still exact Taylor data.
  int valid_order() const { return valid_order_; }
  const JetLayout& layout() const { return *layout_; }
  std::size_t size() const { return coeffs_.size(); }

  const T& value() const { return coeffs_[0]; }
  const T& coefficient_at(std::size_t k) const { return coeffs_[k]; }
  T& coefficient_at(std::size_t k) { return coeffs_[k]; }

  T coefficient(const MultiIndex& idx) const {
    const int k = checked(idx);
    return coeffs_[k];
  }
  void set_coefficient(const MultiIndex& idx, const T& c) { coeffs_[checked(idx)] = c; }

  // Partial derivative at the base point: coefficient times idx!.
  T partial(const MultiIndex& idx) const {
    const int k = checked(idx);
    if (idx.order() > valid_order_) {
      throw Error(ErrorKind::kInvalidArgument,
                  "partial of order " + std::to_string(idx.order()) +
                      " requested from a jet valid to order " + std::to_string(valid_order_));
    }
    return coeffs_[k] * T(layout_->factorials[k]);
  }

  void set_valid_order(int order) { valid_order_ = order; }

  Jet& operator+=(const Jet& o) {
    require_same_base(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    valid_order_ = std::min(valid_order_, o.valid_order_);
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    require_same_base(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    valid_order_ = std::min(valid_order_, o.valid_order_);
    return *this;
  }
  Jet& operator*=(const T& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const T& s) { return a *= s; }
  friend Jet operator*(const T& s, Jet a) { return a *= s; }
  friend Jet operator*(const Jet& a, const Jet& b) {
    a.require_same_base(b);
    Jet out(a.dimension(), a.base_);
    for (const auto& p : a.layout_->products) out.coeffs_[p.c] += a.coeffs_[p.a] * b.coeffs_[p.b];
    out.valid_order_ = std::min(a.valid_order_, b.valid_order_);
    return out;
  }

  void require_same_base(const Jet& o) const {
    if (o.layout_ != layout_) {
      throw Error(ErrorKind::kDimensionMismatch, "jets of different dimension");
    }
    if (o.base_ != base_) {
      throw Error(ErrorKind::kBasePointMismatch, "jets based at " + format_point(base_) +
                                                     " and " + format_point(o.base_));
    }
  }

 private:
  int checked(const MultiIndex& idx) const {
    if (idx.size() != dimension()) {
      throw Error(ErrorKind::kDimensionMismatch, "jet index length differs from dimension");
    }
    const int k = layout_->find(idx);
    if (k < 0) throw Error(ErrorKind::kInvalidArgument, "jet index beyond truncation order");
    return k;
  }

  const JetLayout* layout_ = nullptr;
  std::vector<double> base_;
  std::vector<T> coeffs_;
  int valid_order_ = kJetOrder;
};

template <typename T>
Jet<T> jet_combine(JetOp op, const Jet<T>& a, const Jet<T>& b) {
  switch (op) {
    case JetOp::kAdd: return a + b;
    case JetOp::kSub: return a - b;
    case JetOp::kMul: return a * b;
  }
  return a;
}

template <typename T>
Jet<T> jet_scale(const Jet<T>& a, const T& s) {
  return a * s;
}

// d/dx_var; the valid order drops by one.
template <typename T>
Jet<T> jet_derive(const Jet<T>& a, int var) {
  Jet<T> out(a.dimension(), a.base_point());
  const JetLayout& L = a.layout();
  for (std::size_t k = 0; k < L.indices.size(); ++k) {
    const int up = L.shift[var][k];
    if (up < 0) continue;
    out.coefficient_at(k) = a.coefficient_at(up) * T(L.indices[up][var]);
  }
  out.set_valid_order(std::max(0, a.valid_order() - 1));
  return out;
}

// sum_k series[k] * (a - a(x0))^k, truncated.
template <typename T>
Jet<T> jet_compose(const Jet<T>& a, const T (&series)[kJetOrder + 1]) {
  Jet<T> tail = a;
  tail.coefficient_at(0) = T(0);
  Jet<T> out = Jet<T>::constant(a.dimension(), a.base_point(), series[0]);
  Jet<T> pw = tail;
  for (int k = 1; k <= kJetOrder; ++k) {
    Jet<T> term = pw * series[k];
    out += term;
    if (k < kJetOrder) pw = pw * tail;
  }
  out.set_valid_order(a.valid_order());
  return out;
}

template <typename T>
Jet<T> jet_power(const Jet<T>& a, double e) {
  static_assert(std::is_floating_point_v<T>, "real powers need a floating-point jet");
  const T a0 = a.value();
  const bool small_integer = e >= 0 && e <= 8 && e == std::floor(e);
  if (small_integer) {
    Jet<T> out = Jet<T>::constant(a.dimension(), a.base_point(), T(1));
    for (int k = 0; k < static_cast<int>(e); ++k) out = out * a;
    out.set_valid_order(a.valid_order());
    return out;
  }
  if (!(a0 > 0)) {
    std::ostringstream os;
    os << "power " << e << " of a jet with nonpositive value " << static_cast<double>(a0)
       << " at " << format_point(a.base_point());
    throw Error(ErrorKind::kDomain, os.str());
  }
  T series[kJetOrder + 1];
  series[0] = std::pow(a0, static_cast<T>(e));
  for (int k = 1; k <= kJetOrder; ++k) {
    series[k] = series[k - 1] * (static_cast<T>(e) - (k - 1)) / (static_cast<T>(k) * a0);
  }
  return jet_compose(a, series);
}

template <typename T>
Jet<T> jet_exp(const Jet<T>& a) {
  static_assert(std::is_floating_point_v<T>, "exp needs a floating-point jet");
  T series[kJetOrder + 1];
  series[0] = std::exp(a.value());
  for (int k = 1; k <= kJetOrder; ++k) series[k] = series[k - 1] / static_cast<T>(k);
  return jet_compose(a, series);
}

// Taylor data of p at x0. Exact when x0 is rational.
Jet<Surd> jet_from_poly(const Poly& p, const std::vector<Rational>& x0);
Jet<double> jet_from_poly(const Poly& p, const std::vector<double>& x0);

template <typename To, typename From>
Jet<To> jet_cast(const Jet<From>& a) {
  Jet<To> out(a.dimension(), a.base_point());
  for (std::size_t k = 0; k < a.size(); ++k) {
    if constexpr (std::is_same_v<From, Surd>) {
      if constexpr (std::is_same_v<To, long double>) {
        out.coefficient_at(k) = a.coefficient_at(k).to_long_double();
      } else {
        out.coefficient_at(k) = static_cast<To>(a.coefficient_at(k).to_double());
      }
    } else {
      out.coefficient_at(k) = static_cast<To>(a.coefficient_at(k));
    }
  }
  out.set_valid_order(a.valid_order());
  return out;
}

}  // namespace pmecc
