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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pmecc/core/rational.hpp"

namespace pmecc {

struct MultiIndex {
  std::vector<int> exponents;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> e) : exponents(std::move(e)) {}
  static MultiIndex zero(int dim) { return MultiIndex(std::vector<int>(dim, 0)); }
  static MultiIndex unit(int dim, int var, int power = 1);

  int size() const { return static_cast<int>(exponents.size()); }
  int order() const;
  int operator[](int i) const { return exponents[i]; }
  int& operator[](int i) { return exponents[i]; }
  // Product of the factorials of the exponents.
  long factorial() const;

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.exponents == b.exponents;
  }
};

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);

// Graded order; within a degree x1 sorts before x2 (lex descending).
struct MonomialOrder {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

// Sparse polynomial in n variables with coefficients in Q or Q(s).
class Poly {
 public:
  using TermMap = std::map<MultiIndex, Surd, MonomialOrder>;

  explicit Poly(int dim = 0, Rational radicand = 0);

  static Poly constant(int dim, const Surd& c);
  static Poly variable(int dim, int var);
  static Poly monomial(const MultiIndex& idx, const Surd& c);

  int dimension() const { return dim_; }
  // Square of the extension generator s, or zero when all coefficients are rational.
  const Rational& radicand() const { return s2_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  Surd coefficient(const MultiIndex& idx) const;

  void add_term(const MultiIndex& idx, const Surd& c);

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Surd& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Surd& c) { return a *= c; }
  friend Poly operator*(const Surd& c, Poly a) { return a *= c; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a) { return a * Surd(-1); }
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

 private:
  void adopt_radicand(const Rational& s2);

  int dim_;
  Rational s2_;
  TermMap terms_;
};

Poly derive(const Poly& p, const MultiIndex& idx);
Poly derive(const Poly& p, int var, int times = 1);

Surd evaluate(const Poly& p, const std::vector<Rational>& x);
double evaluate(const Poly& p, const std::vector<double>& x);
long double evaluate(const Poly& p, const std::vector<long double>& x);

Poly homogeneous_part(const Poly& p, int degree);
// Lowest total degree carrying a nonzero term; -1 for the zero polynomial.
int lowest_degree(const Poly& p);

// perm[i] is the new position of variable i.
Poly permute_variables(const Poly& p, const std::vector<int>& perm);
// Substitutes x_var -> -x_var.
Poly flip_sign(const Poly& p, int var);

std::string format_poly(const Poly& p);
Poly parse_poly(std::string_view text);

// Double-precision copy of the coefficients for fast repeated evaluation.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  explicit CompiledPoly(const Poly& p);

  int dimension() const { return dim_; }
  template <typename T>
  T operator()(const T* x) const;

 private:
  int dim_ = 0;
  int max_exp_ = 0;
  std::vector<int> exponents_;        // flattened, dim_ per term
  std::vector<long double> coeffs_;
};

}  // namespace pmecc
