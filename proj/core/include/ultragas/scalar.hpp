// Copyright 2026 The ultragas Authors
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

#ifndef ULTRAGAS_SCALAR_HPP
#define ULTRAGAS_SCALAR_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "ultragas/birational.hpp"
#include "ultragas/exponents.hpp"

namespace ultragas {

/// Thrown when an operation combines scalars of different kinds.
class MixedModeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an evaluation hits a divergent integral or a pole.
class DivergenceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class ScalarKind { exact, symbolic, complex };

std::string to_string(ScalarKind kind);

/// Closed tagged union of the three arithmetic kinds: exact rationals,
/// rational functions in (q, y = q^beta), and complex floats. Mixed-kind
/// arithmetic is rejected with MixedModeError.
class ScalarValue {
 public:
  ScalarValue() : value_(Rational(0)) {}
  ScalarValue(Rational r) : value_(std::move(r)) {}
  ScalarValue(BiRational b) : value_(std::move(b)) {}
  ScalarValue(Complex c) : value_(c) {}

  ScalarKind kind() const { return static_cast<ScalarKind>(value_.index()); }
  bool is_exact() const { return kind() == ScalarKind::exact; }
  bool is_symbolic() const { return kind() == ScalarKind::symbolic; }
  bool is_complex() const { return kind() == ScalarKind::complex; }

  const Rational& exact() const;
  const BiRational& symbolic() const;
  Complex complex() const;
  /// Numeric value of an exact or complex scalar.
  Complex to_complex() const;

  /// One and zero of the same kind as `like`.
  static ScalarValue one_like(const ScalarValue& like);
  static ScalarValue zero_like(const ScalarValue& like);

  ScalarValue& operator+=(const ScalarValue& o);
  ScalarValue& operator-=(const ScalarValue& o);
  ScalarValue& operator*=(const ScalarValue& o);
  ScalarValue& operator/=(const ScalarValue& o);
  friend ScalarValue operator+(ScalarValue a, const ScalarValue& b) { return a += b; }
  friend ScalarValue operator-(ScalarValue a, const ScalarValue& b) { return a -= b; }
  friend ScalarValue operator*(ScalarValue a, const ScalarValue& b) { return a *= b; }
  friend ScalarValue operator/(ScalarValue a, const ScalarValue& b) { return a /= b; }
  ScalarValue operator-() const;

  /// Exact equality within a kind (BiRationals by cross-multiplication,
  /// complex bitwise); false across kinds.
  friend bool operator==(const ScalarValue& a, const ScalarValue& b);

  /// "p/q" for rationals, a polynomial ratio for symbolic values, and 17
  /// significant digits (with an imaginary part when nonzero) for floats.
  std::string to_string() const;

  const std::variant<Rational, BiRational, Complex>& variant() const { return value_; }

 private:
  std::variant<Rational, BiRational, Complex> value_;
};

/// |a - b| <= rel * max(|a|, |b|) for numeric scalars; exact equality when
/// both are exact or symbolic.
bool approx_equal(const ScalarValue& a, const ScalarValue& b, double rel);

/// Relative difference |a - b| / max(|a|, |b|, tiny).
double relative_difference(Complex a, Complex b);

/// 17-significant-digit decimal text for a double.
std::string format_double(double x);

}  // namespace ultragas

#endif  // ULTRAGAS_SCALAR_HPP
