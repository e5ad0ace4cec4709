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

#ifndef ULTRAGAS_BIRATIONAL_HPP
#define ULTRAGAS_BIRATIONAL_HPP

#include <complex>
#include <compare>
#include <map>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "ultragas/laurent.hpp"

namespace ultragas {

/// Phi_d(q^a y^b) with gcd(a, b) = 1 and (a, b) lexicographically positive.
/// Such factors are irreducible in Z[q^±1, y^±1].
struct CyclotomicFactor {
  int d = 1;
  int a = 0;
  int b = 0;

  friend auto operator<=>(const CyclotomicFactor&, const CyclotomicFactor&) = default;
  friend bool operator==(const CyclotomicFactor&, const CyclotomicFactor&) = default;
};

/// Rational function in q and y = q^beta with integer coefficients.
///
/// Stored as a Laurent numerator over a positive integer constant times a
/// product of irreducible cyclotomic factors. Every operation cancels common
/// factors, so the representation is gcd-reduced. Division is supported when
/// the divisor's numerator is a single term; reciprocals of binomials
/// q^a y^b - 1 have dedicated constructors.
class BiRational {
 public:
  BiRational() = default;
  explicit BiRational(const mpz_class& c);
  explicit BiRational(const mpq_class& c);
  explicit BiRational(const LaurentPoly& numerator);
  static BiRational monomial(const mpz_class& coeff, int deg_q, int deg_y);
  static BiRational q() { return monomial(1, 1, 0); }
  static BiRational y() { return monomial(1, 0, 1); }
  /// 1 / (q^a y^b - 1). Throws std::domain_error for a = b = 0.
  static BiRational reciprocal_binomial(int a, int b);
  /// 1 / Phi_d(q^a y^b) for primitive (a, b).
  static BiRational reciprocal_cyclotomic(int d, int a, int b);

  bool is_zero() const { return num_.is_zero(); }
  const LaurentPoly& numerator() const { return num_; }
  const mpz_class& denominator_constant() const { return den_const_; }
  const std::map<CyclotomicFactor, int>& denominator_factors() const { return den_factors_; }
  /// Constant times the product of cyclotomic factors, expanded.
  LaurentPoly expanded_denominator() const;
  /// Numerator and denominator as ordinary polynomials (all exponents >= 0,
  /// monomial factors moved across so neither side keeps a removable
  /// monomial).
  std::pair<LaurentPoly, LaurentPoly> as_polynomial_ratio() const;

  std::complex<double> evaluate(std::complex<double> q, std::complex<double> y) const;
  /// Exact substitution; throws std::domain_error if the denominator vanishes.
  mpq_class evaluate(const mpq_class& q, const mpq_class& y) const;

  BiRational& operator+=(const BiRational& o);
  BiRational& operator-=(const BiRational& o);
  BiRational& operator*=(const BiRational& o);
  BiRational& operator/=(const BiRational& o);
  friend BiRational operator+(BiRational a, const BiRational& b) { return a += b; }
  friend BiRational operator-(BiRational a, const BiRational& b) { return a -= b; }
  friend BiRational operator*(BiRational a, const BiRational& b) { return a *= b; }
  friend BiRational operator/(BiRational a, const BiRational& b) { return a /= b; }
  BiRational operator-() const;
  /// Equality by cross-multiplication.
  friend bool operator==(const BiRational& a, const BiRational& b);

  std::string to_string() const;

 private:
  void normalize();

  LaurentPoly num_;
  mpz_class den_const_ = 1;
  std::map<CyclotomicFactor, int> den_factors_;
};

}  // namespace ultragas

#endif  // ULTRAGAS_BIRATIONAL_HPP
