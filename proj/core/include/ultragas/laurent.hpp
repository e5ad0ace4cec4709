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

#ifndef ULTRAGAS_LAURENT_HPP
#define ULTRAGAS_LAURENT_HPP

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace ultragas {

/// Exponent pair (degree in q, degree in y).
using Monomial = std::pair<int, int>;

/// Integer-coefficient Laurent polynomial in two variables q and y.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(const mpz_class& constant);
  static LaurentPoly monomial(const mpz_class& coeff, int deg_q, int deg_y);
  /// Phi_d(q^a y^b) for the d-th cyclotomic polynomial Phi_d.
  static LaurentPoly cyclotomic(int d, int a, int b);

  bool is_zero() const { return terms_.empty(); }
  /// True for c * q^a * y^b (including zero).
  bool is_monomial() const { return terms_.size() <= 1; }
  const std::map<Monomial, mpz_class>& terms() const { return terms_; }

  /// Smallest degree in q (resp. y) among the terms; 0 for the zero poly.
  int min_deg_q() const;
  int min_deg_y() const;
  /// Gcd of the coefficients (non-negative).
  mpz_class content() const;

  LaurentPoly shifted(int dq, int dy) const;
  /// Exact quotient by a nonzero `divisor` in Z[q^±1, y^±1], if one exists.
  std::optional<LaurentPoly> divide_exact(const LaurentPoly& divisor) const;
  LaurentPoly divided_by_constant(const mpz_class& c) const;

  std::complex<double> evaluate(std::complex<double> q, std::complex<double> y) const;
  mpq_class evaluate(const mpq_class& q, const mpq_class& y) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const mpz_class& c);
  LaurentPoly operator-() const;
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const mpz_class& c);

  std::map<Monomial, mpz_class> terms_;
};

}  // namespace ultragas

#endif  // ULTRAGAS_LAURENT_HPP
