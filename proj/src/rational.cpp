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

#include "pmecc/core/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include "pmecc/core/error.hpp"

namespace pmecc {

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) {
    throw Error(ErrorKind::kInvalidArgument, "non-finite value has no rational form");
  }
  return Rational(x);
}

Rational snap_rational(double x, long max_denominator) {
  Rational exact = rational_from_double(x);
  if (x == std::floor(x)) return exact;
  // Continued-fraction convergents of |x|.
  const double ax = std::fabs(x);
  double r = ax;
  mpz_class h_prev = 1, h = static_cast<long>(std::floor(r));
  mpz_class k_prev = 0, k = 1;
  for (int iter = 0; iter < 64; ++iter) {
    Rational candidate(h, k);
    candidate.canonicalize();
    if (std::fabs(candidate.get_d() - ax) <= 1e-15 * ax) {
      return x < 0 ? Rational(-candidate) : candidate;
    }
    const double frac = r - std::floor(r);
    if (frac < 1e-300) break;
    r = 1.0 / frac;
    const mpz_class a = static_cast<long>(std::floor(r));
    mpz_class h_next = a * h + h_prev;
    mpz_class k_next = a * k + k_prev;
    if (k_next > max_denominator) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  return exact;
}

std::string format_rational(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  const auto first = s.find_first_not_of(" \t");
  const auto last = s.find_last_not_of(" \t");
  if (first == std::string::npos) {
    throw Error(ErrorKind::kParse, "empty rational literal");
  }
  s = s.substr(first, last - first + 1);
  const auto slash = s.find('/');
  auto is_integer = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i) {
      if (t[i] < '0' || t[i] > '9') return false;
    }
    return true;
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!is_integer(num) || !is_integer(den) || den[0] == '-' || den[0] == '+') {
    throw Error(ErrorKind::kParse, "malformed rational literal '" + s + "'");
  }
  mpz_class d(den);
  if (d == 0) throw Error(ErrorKind::kParse, "zero denominator in '" + s + "'");
  Rational q(mpz_class(num), d);
  q.canonicalize();
  return q;
}

Surd::Surd(Rational q0, Rational q1, Rational radicand)
    : q0_(std::move(q0)), q1_(std::move(q1)), s2_(std::move(radicand)) {
  if (sgn(s2_) < 0) {
    throw Error(ErrorKind::kInvalidArgument, "negative radicand in field extension");
  }
  if (sgn(s2_) == 0 && sgn(q1_) != 0) {
    throw Error(ErrorKind::kInvalidArgument, "surd part without a radicand");
  }
  normalize();
}

Surd Surd::root(const Rational& radicand) { return Surd(Rational(0), Rational(1), radicand); }

void Surd::normalize() {
  if (sgn(q1_) == 0) s2_ = 0;
}

Rational Surd::merge_radicand(const Surd& a, const Surd& b) {
  if (sgn(a.s2_) != 0 && sgn(b.s2_) != 0 && a.s2_ != b.s2_) {
    throw Error(ErrorKind::kInvalidArgument,
                "mixing elements of different quadratic extensions");
  }
  return sgn(a.s2_) != 0 ? a.s2_ : b.s2_;
}

int Surd::sign() const {
  const int s0 = sgn(q0_);
  const int s1 = sgn(q1_);
  if (s1 == 0) return s0;
  if (s0 == 0 || s0 == s1) return s1;
  // Opposite signs: compare q0^2 with q1^2 * s2.
  const Rational lhs = q0_ * q0_;
  const Rational rhs = q1_ * q1_ * s2_;
  const int c = cmp(lhs, rhs);
  if (c == 0) return 0;
  return c > 0 ? s0 : s1;
}

double Surd::to_double() const {
  if (is_rational()) return q0_.get_d();
  return q0_.get_d() + q1_.get_d() * std::sqrt(s2_.get_d());
}

long double Surd::to_long_double() const {
  // mpq only exposes double; recover extra bits from the residual.
  auto ld = [](const Rational& q) {
    const double hi = q.get_d();
    const Rational rest = q - Rational(hi);
    return static_cast<long double>(hi) + static_cast<long double>(rest.get_d());
  };
  if (is_rational()) return ld(q0_);
  return ld(q0_) + ld(q1_) * std::sqrt(ld(s2_));
}

Surd Surd::inverse() const {
  if (is_zero()) throw Error(ErrorKind::kDomain, "division by zero in Q(s)");
  if (is_rational()) return Surd(Rational(1 / q0_));
  const Rational norm = q0_ * q0_ - q1_ * q1_ * s2_;
  if (sgn(norm) == 0) {
    throw Error(ErrorKind::kDomain, "radicand is a perfect square; element is a zero divisor");
  }
  return Surd(Rational(q0_ / norm), Rational(-q1_ / norm), s2_);
}

Surd& Surd::operator+=(const Surd& other) {
  s2_ = merge_radicand(*this, other);
  q0_ += other.q0_;
  q1_ += other.q1_;
  normalize();
  return *this;
}

Surd& Surd::operator-=(const Surd& other) {
  s2_ = merge_radicand(*this, other);
  q0_ -= other.q0_;
  q1_ -= other.q1_;
  normalize();
  return *this;
}

Surd& Surd::operator*=(const Surd& other) {
  if (is_rational() && other.is_rational()) {
    q0_ *= other.q0_;
    return *this;
  }
  const Rational s2 = merge_radicand(*this, other);
  Rational r0 = q0_ * other.q0_ + q1_ * other.q1_ * s2;
  Rational r1 = q0_ * other.q1_ + q1_ * other.q0_;
  q0_ = std::move(r0);
  q1_ = std::move(r1);
  s2_ = s2;
  normalize();
  return *this;
}

std::string format_surd(const Surd& value) {
  std::string out = format_rational(value.rational_part());
  if (!value.is_rational()) {
    out += " + " + format_rational(value.surd_part()) + " * s";
  }
  return out;
}

}  // namespace pmecc
