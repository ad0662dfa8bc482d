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

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace pmecc {

using Rational = mpq_class;

// Exact value of a double (every finite double is a dyadic rational).
Rational rational_from_double(double x);

// Best rational approximation with denominator <= max_denominator when it
// reproduces x to within 1e-15 relative; otherwise the exact dyadic value.
Rational snap_rational(double x, long max_denominator = 1000000);

// Canonical "p/q" spelling; the denominator is always written.
std::string format_rational(const Rational& q);

// Accepts "p/q" or an integer "p".
Rational parse_rational(std::string_view text);

// Element q0 + q1*s of the quadratic extension Q(s), s = sqrt(radicand).
//
// A radicand of zero means the element lives in Q. Elements are kept
// normalized: whenever q1 == 0 the radicand is reset to zero, so values that
// happen to be rational compare equal regardless of where they came from.
class Surd {
 public:
  Surd() = default;
  Surd(long value) : q0_(value) {}  // NOLINT(runtime/explicit)
  Surd(Rational value) : q0_(std::move(value)) {}  // NOLINT(runtime/explicit)
  Surd(Rational q0, Rational q1, Rational radicand);

  // The element sqrt(radicand) itself.
  static Surd root(const Rational& radicand);

  const Rational& rational_part() const { return q0_; }
  const Rational& surd_part() const { return q1_; }
  const Rational& radicand() const { return s2_; }

  bool is_zero() const { return sgn(q0_) == 0 && sgn(q1_) == 0; }
  bool is_rational() const { return sgn(q1_) == 0; }

  // Exact sign, decided by squaring when the two parts disagree.
  int sign() const;
  double to_double() const;
  long double to_long_double() const;

  Surd inverse() const;

  Surd& operator+=(const Surd& other);
  Surd& operator-=(const Surd& other);
  Surd& operator*=(const Surd& other);
  Surd& operator/=(const Surd& other) { return *this *= other.inverse(); }

  friend Surd operator+(Surd a, const Surd& b) { return a += b; }
  friend Surd operator-(Surd a, const Surd& b) { return a -= b; }
  friend Surd operator*(Surd a, const Surd& b) { return a *= b; }
  friend Surd operator/(Surd a, const Surd& b) { return a /= b; }
  friend Surd operator-(Surd a) {
    a.q0_ = -a.q0_;
    a.q1_ = -a.q1_;
    return a;
  }
  friend bool operator==(const Surd& a, const Surd& b) {
    return a.q0_ == b.q0_ && a.q1_ == b.q1_ && a.s2_ == b.s2_;
  }

 private:
  void normalize();
  static Rational merge_radicand(const Surd& a, const Surd& b);

  Rational q0_;
  Rational q1_;
  Rational s2_;
};

// "p/q" or "p/q + r/t * s".
std::string format_surd(const Surd& value);

}  // namespace pmecc
