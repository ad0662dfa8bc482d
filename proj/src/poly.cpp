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

#include "pmecc/core/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <type_traits>

#include "pmecc/core/error.hpp"

namespace pmecc {

MultiIndex MultiIndex::unit(int dim, int var, int power) {
  MultiIndex idx = zero(dim);
  idx[var] = power;
  return idx;
}

int MultiIndex::order() const {
  int s = 0;
  for (int e : exponents) s += e;
  return s;
}

long MultiIndex::factorial() const {
  long f = 1;
  for (int e : exponents) {
    for (int k = 2; k <= e; ++k) f *= k;
  }
  return f;
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "multi-index lengths differ");
  }
  MultiIndex c = a;
  for (int i = 0; i < c.size(); ++i) c[i] += b[i];
  return c;
}

bool MonomialOrder::operator()(const MultiIndex& a, const MultiIndex& b) const {
  const int oa = a.order();
  const int ob = b.order();
  if (oa != ob) return oa < ob;
  return a.exponents > b.exponents;
}

Poly::Poly(int dim, Rational radicand) : dim_(dim), s2_(std::move(radicand)) {
  if (dim < 0) throw Error(ErrorKind::kInvalidArgument, "negative polynomial dimension");
}

Poly Poly::constant(int dim, const Surd& c) {
  Poly p(dim, c.radicand());
  p.add_term(MultiIndex::zero(dim), c);
  return p;
}

Poly Poly::variable(int dim, int var) {
  return monomial(MultiIndex::unit(dim, var), Surd(1));
}

Poly Poly::monomial(const MultiIndex& idx, const Surd& c) {
  Poly p(idx.size(), c.radicand());
  p.add_term(idx, c);
  return p;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [idx, c] : terms_) d = std::max(d, idx.order());
  return d;
}

Surd Poly::coefficient(const MultiIndex& idx) const {
  auto it = terms_.find(idx);
  return it == terms_.end() ? Surd() : it->second;
}

void Poly::adopt_radicand(const Rational& s2) {
  if (sgn(s2) == 0) return;
  if (sgn(s2_) != 0 && s2_ != s2) {
    throw Error(ErrorKind::kInvalidArgument, "polynomials over different extensions");
  }
  s2_ = s2;
}

void Poly::add_term(const MultiIndex& idx, const Surd& c) {
  if (idx.size() != dim_) {
    throw Error(ErrorKind::kDimensionMismatch, "term index length differs from dimension");
  }
  for (int e : idx.exponents) {
    if (e < 0) throw Error(ErrorKind::kInvalidArgument, "negative exponent");
  }
  if (c.is_zero()) return;
  adopt_radicand(c.radicand());
  auto [it, inserted] = terms_.emplace(idx, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& other) {
  if (other.dim_ != dim_) throw Error(ErrorKind::kDimensionMismatch, "adding polynomials");
  adopt_radicand(other.s2_);
  for (const auto& [idx, c] : other.terms_) add_term(idx, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  if (other.dim_ != dim_) throw Error(ErrorKind::kDimensionMismatch, "subtracting polynomials");
  adopt_radicand(other.s2_);
  for (const auto& [idx, c] : other.terms_) add_term(idx, -c);
  return *this;
}

Poly& Poly::operator*=(const Surd& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  adopt_radicand(c.radicand());
  TermMap out;
  for (auto& [idx, coeff] : terms_) {
    Surd prod = coeff * c;
    if (!prod.is_zero()) out.emplace(idx, std::move(prod));
  }
  terms_ = std::move(out);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.dim_ != b.dim_) throw Error(ErrorKind::kDimensionMismatch, "multiplying polynomials");
  Poly out(a.dim_, a.s2_);
  out.adopt_radicand(b.s2_);
  for (const auto& [ia, ca] : a.terms_) {
    for (const auto& [ib, cb] : b.terms_) out.add_term(ia + ib, ca * cb);
  }
  return out;
}

Poly derive(const Poly& p, const MultiIndex& idx) {
  if (idx.size() != p.dimension()) {
    throw Error(ErrorKind::kDimensionMismatch, "derivative index length differs from dimension");
  }
  Poly out(p.dimension(), p.radicand());
  for (const auto& [mono, c] : p.terms()) {
    MultiIndex e = mono;
    long factor = 1;
    bool vanishes = false;
    for (int i = 0; i < e.size() && !vanishes; ++i) {
      for (int k = 0; k < idx[i]; ++k) {
        if (e[i] == 0) {
          vanishes = true;
          break;
        }
        factor *= e[i];
        --e[i];
      }
    }
    if (!vanishes) out.add_term(e, c * Surd(factor));
  }
  return out;
}

Poly derive(const Poly& p, int var, int times) {
  return derive(p, MultiIndex::unit(p.dimension(), var, times));
}

namespace {

template <typename T>
T power(const T& x, int e) {
  T r(1);
  for (int k = 0; k < e; ++k) r *= x;
  return r;
}

void check_point(const Poly& p, std::size_t len) {
  if (static_cast<int>(len) != p.dimension()) {
    throw Error(ErrorKind::kDimensionMismatch, "evaluation point length differs from dimension");
  }
}

template <typename T>
T evaluate_float(const Poly& p, const std::vector<T>& x) {
  check_point(p, x.size());
  T sum = 0;
  for (const auto& [idx, c] : p.terms()) {
    T term = std::is_same_v<T, long double> ? c.to_long_double() : T(c.to_double());
    for (int i = 0; i < idx.size(); ++i) term *= power(x[i], idx[i]);
    sum += term;
  }
  return sum;
}

}  // namespace

Surd evaluate(const Poly& p, const std::vector<Rational>& x) {
  check_point(p, x.size());
  Rational q0 = 0, q1 = 0;
  for (const auto& [idx, c] : p.terms()) {
    Rational m = 1;
    for (int i = 0; i < idx.size(); ++i) {
      if (idx[i] > 0) m *= power(x[i], idx[i]);
    }
    q0 += c.rational_part() * m;
    q1 += c.surd_part() * m;
  }
  if (sgn(q1) == 0) return Surd(q0);
  return Surd(q0, q1, p.radicand());
}

double evaluate(const Poly& p, const std::vector<double>& x) { return evaluate_float(p, x); }

long double evaluate(const Poly& p, const std::vector<long double>& x) {
  return evaluate_float(p, x);
}

Poly homogeneous_part(const Poly& p, int degree) {
  Poly out(p.dimension(), p.radicand());
  for (const auto& [idx, c] : p.terms()) {
    if (idx.order() == degree) out.add_term(idx, c);
  }
  return out;
}

int lowest_degree(const Poly& p) {
  return p.is_zero() ? -1 : p.terms().begin()->first.order();
}

Poly permute_variables(const Poly& p, const std::vector<int>& perm) {
  check_point(p, perm.size());
  Poly out(p.dimension(), p.radicand());
  for (const auto& [idx, c] : p.terms()) {
    MultiIndex e = MultiIndex::zero(p.dimension());
    for (int i = 0; i < idx.size(); ++i) e[perm[i]] = idx[i];
    out.add_term(e, c);
  }
  return out;
}

Poly flip_sign(const Poly& p, int var) {
  Poly out(p.dimension(), p.radicand());
  for (const auto& [idx, c] : p.terms()) out.add_term(idx, idx[var] % 2 ? -c : c);
  return out;
}

std::string format_poly(const Poly& p) {
  std::ostringstream os;
  os << "dim=" << p.dimension() << " s2="
     << (sgn(p.radicand()) == 0 ? std::string("none") : format_rational(p.radicand())) << "\n";
  for (const auto& [idx, c] : p.terms()) {
    for (int i = 0; i < idx.size(); ++i) os << (i ? " " : "") << idx[i];
    os << " : " << format_surd(c) << "\n";
  }
  return os.str();
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

Poly parse_poly(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int dim = -1;
  Rational s2 = 0;
  bool has_header = false;
  Poly out;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (!has_header) {
      std::istringstream hs(t);
      std::string a, b;
      hs >> a >> b;
      if (a.rfind("dim=", 0) != 0 || b.rfind("s2=", 0) != 0) {
        throw Error(ErrorKind::kParse, "polynomial header must read 'dim=<n> s2=<q>|none'");
      }
      try {
        dim = std::stoi(a.substr(4));
      } catch (const std::exception&) {
        throw Error(ErrorKind::kParse, "bad dimension in polynomial header");
      }
      if (dim < 0) throw Error(ErrorKind::kParse, "negative dimension in polynomial header");
      const std::string sv = b.substr(3);
      if (sv != "none") {
        s2 = parse_rational(sv);
        if (sgn(s2) <= 0) throw Error(ErrorKind::kParse, "radicand must be positive");
      }
      out = Poly(dim, s2);
      has_header = true;
      continue;
    }
    const auto colon = t.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorKind::kParse, "line " + std::to_string(lineno) + ": missing ':'");
    }
    std::istringstream es(t.substr(0, colon));
    std::vector<int> e;
    std::string tok;
    while (es >> tok) {
      try {
        std::size_t used = 0;
        e.push_back(std::stoi(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw Error(ErrorKind::kParse, "line " + std::to_string(lineno) + ": bad exponent '" + tok + "'");
      }
    }
    if (static_cast<int>(e.size()) != dim) {
      throw Error(ErrorKind::kParse, "line " + std::to_string(lineno) + ": expected " +
                                         std::to_string(dim) + " exponents");
    }
    std::string rhs = trim(t.substr(colon + 1));
    Surd c;
    const auto star = rhs.find('*');
    if (star == std::string::npos) {
      c = Surd(parse_rational(rhs));
    } else {
      if (trim(rhs.substr(star + 1)) != "s") {
        throw Error(ErrorKind::kParse, "line " + std::to_string(lineno) + ": expected '* s'");
      }
      const std::string lhs = trim(rhs.substr(0, star));
      // Split "q0 + q1" or "q0 - q1" at the separating operator (after the first token).
      const auto sep = lhs.find_first_of("+-", lhs.find_first_not_of("+-"));
      if (sep == std::string::npos) {
        throw Error(ErrorKind::kParse, "line " + std::to_string(lineno) + ": malformed surd");
      }
      Rational q0 = parse_rational(trim(lhs.substr(0, sep)));
      Rational q1 = parse_rational(trim(lhs.substr(sep + 1)));
      if (lhs[sep] == '-') q1 = -q1;
      if (sgn(s2) == 0) {
        throw Error(ErrorKind::kParse, "surd coefficient in a polynomial without radicand");
      }
      c = Surd(q0, q1, s2);
    }
    for (int v : e) {
      if (v < 0) throw Error(ErrorKind::kParse, "negative exponent");
    }
    if (out.coefficient(MultiIndex(e)).is_zero() == false) {
      throw Error(ErrorKind::kParse, "line " + std::to_string(lineno) + ": duplicate term");
    }
    if (c.is_zero()) {
      throw Error(ErrorKind::kParse, "line " + std::to_string(lineno) + ": zero coefficient stored");
    }
    out.add_term(MultiIndex(e), c);
  }
  if (!has_header) throw Error(ErrorKind::kParse, "empty polynomial text");
  return out;
}

CompiledPoly::CompiledPoly(const Poly& p) : dim_(p.dimension()) {
  for (const auto& [idx, c] : p.terms()) {
    for (int e : idx.exponents) {
      exponents_.push_back(e);
      max_exp_ = std::max(max_exp_, e);
    }
    coeffs_.push_back(c.to_long_double());
  }
  if (dim_ > 16 || max_exp_ > 8) {
    throw Error(ErrorKind::kInvalidArgument, "compiled evaluation supports dim <= 16, degree <= 8");
  }
}

template <typename T>
T CompiledPoly::operator()(const T* x) const {
  // Power table per variable, then one pass over the terms.
  T pw[16][9];
  for (int i = 0; i < dim_; ++i) {
    pw[i][0] = 1;
    for (int k = 1; k <= max_exp_; ++k) pw[i][k] = pw[i][k - 1] * x[i];
  }
  T sum = 0;
  const int* e = exponents_.data();
  for (std::size_t t = 0; t < coeffs_.size(); ++t, e += dim_) {
    T term = static_cast<T>(coeffs_[t]);
    for (int i = 0; i < dim_; ++i) {
      if (e[i]) term *= pw[i][e[i]];
    }
    sum += term;
  }
  return sum;
}

template double CompiledPoly::operator()(const double*) const;
template long double CompiledPoly::operator()(const long double*) const;

}  // namespace pmecc
