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

#include "ultragas/birational.hpp"

#include <numeric>
#include <stdexcept>

namespace ultragas {

namespace {

LaurentPoly factor_poly(const CyclotomicFactor& f) { return LaurentPoly::cyclotomic(f.d, f.a, f.b); }

LaurentPoly factor_power(const CyclotomicFactor& f, int k) {
  LaurentPoly out(mpz_class(1));
  const LaurentPoly base = factor_poly(f);
  for (int i = 0; i < k; ++i) out = out * base;
  return out;
}

bool lex_positive(int a, int b) { return a > 0 || (a == 0 && b > 0); }

}  // namespace

BiRational::BiRational(const mpz_class& c) : num_(c) {}

BiRational::BiRational(const mpq_class& c) : num_(c.get_num()), den_const_(c.get_den()) {}

BiRational::BiRational(const LaurentPoly& numerator) : num_(numerator) {}

BiRational BiRational::monomial(const mpz_class& coeff, int deg_q, int deg_y) {
  return BiRational(LaurentPoly::monomial(coeff, deg_q, deg_y));
}

BiRational BiRational::reciprocal_binomial(int a, int b) {
  if (a == 0 && b == 0) throw std::domain_error("pole: q^0 - 1 vanishes identically");
  if (!lex_positive(a, b)) {
    // q^a y^b - 1 = -q^a y^b (q^-a y^-b - 1)
    BiRational r = reciprocal_binomial(-a, -b);
    r.num_ = r.num_ * LaurentPoly::monomial(-1, -a, -b);
    r.normalize();
    return r;
  }
  const int g = std::gcd(a, b);
  BiRational r(mpz_class(1));
  for (int k = 1; k <= g; ++k) {
    if (g % k == 0) ++r.den_factors_[CyclotomicFactor{k, a / g, b / g}];
  }
  return r;
}

BiRational BiRational::reciprocal_cyclotomic(int d, int a, int b) {
  if (d < 1 || std::gcd(a, b) != 1 || !lex_positive(a, b)) {
    throw std::invalid_argument("cyclotomic factor needs d >= 1 and primitive positive (a, b)");
  }
  BiRational r(mpz_class(1));
  r.den_factors_[CyclotomicFactor{d, a, b}] = 1;
  return r;
}

LaurentPoly BiRational::expanded_denominator() const {
  LaurentPoly den(den_const_);
  for (const auto& [f, k] : den_factors_) den = den * factor_power(f, k);
  return den;
}

std::pair<LaurentPoly, LaurentPoly> BiRational::as_polynomial_ratio() const {
  const LaurentPoly den = expanded_denominator();
  if (num_.is_zero()) return {num_, den};
  const int mq = std::min(num_.min_deg_q(), den.min_deg_q());
  const int my = std::min(num_.min_deg_y(), den.min_deg_y());
  return {num_.shifted(-mq, -my), den.shifted(-mq, -my)};
}

std::complex<double> BiRational::evaluate(std::complex<double> q, std::complex<double> y) const {
  std::complex<double> den = den_const_.get_d();
  for (const auto& [f, k] : den_factors_) den *= std::pow(factor_poly(f).evaluate(q, y), k);
  return num_.evaluate(q, y) / den;
}

mpq_class BiRational::evaluate(const mpq_class& q, const mpq_class& y) const {
  mpq_class den = den_const_;
  for (const auto& [f, k] : den_factors_) {
    const mpq_class v = factor_poly(f).evaluate(q, y);
    for (int i = 0; i < k; ++i) den *= v;
  }
  if (den == 0) throw std::domain_error("pole: denominator vanishes at the substituted point");
  return num_.evaluate(q, y) / den;
}

void BiRational::normalize() {
  if (num_.is_zero()) {
    den_const_ = 1;
    den_factors_.clear();
    return;
  }
  for (auto it = den_factors_.begin(); it != den_factors_.end();) {
    const LaurentPoly phi = factor_poly(it->first);
    while (it->second > 0) {
      auto quotient = num_.divide_exact(phi);
      if (!quotient) break;
      num_ = std::move(*quotient);
      --it->second;
    }
    it = it->second == 0 ? den_factors_.erase(it) : std::next(it);
  }
  mpz_class g = num_.content();
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den_const_.get_mpz_t());
  if (g > 1) {
    num_ = num_.divided_by_constant(g);
    den_const_ /= g;
  }
}

BiRational& BiRational::operator+=(const BiRational& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  std::map<CyclotomicFactor, int> lcm = den_factors_;
  for (const auto& [f, k] : o.den_factors_) lcm[f] = std::max(lcm[f], k);
  mpz_class lcm_const;
  mpz_lcm(lcm_const.get_mpz_t(), den_const_.get_mpz_t(), o.den_const_.get_mpz_t());

  auto lift = [&](const BiRational& x) {
    LaurentPoly n = x.num_ * mpz_class(lcm_const / x.den_const_);
    for (const auto& [f, k] : lcm) {
      auto it = x.den_factors_.find(f);
      const int have = it == x.den_factors_.end() ? 0 : it->second;
      if (k > have) n = n * factor_power(f, k - have);
    }
    return n;
  };
  num_ = lift(*this) + lift(o);
  den_const_ = lcm_const;
  den_factors_ = std::move(lcm);
  normalize();
  return *this;
}

BiRational& BiRational::operator-=(const BiRational& o) { return *this += -o; }

BiRational& BiRational::operator*=(const BiRational& o) {
  num_ = num_ * o.num_;
  den_const_ *= o.den_const_;
  for (const auto& [f, k] : o.den_factors_) den_factors_[f] += k;
  normalize();
  return *this;
}

BiRational& BiRational::operator/=(const BiRational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero rational function");
  if (!o.num_.is_monomial()) {
    throw std::domain_error("BiRational division requires a single-term divisor numerator");
  }
  const auto& [m, c] = *o.num_.terms().begin();
  BiRational inverse(LaurentPoly::monomial(1, -m.first, -m.second) * o.expanded_denominator());
  if (c < 0) inverse.num_ = -inverse.num_;
  inverse.den_const_ = abs(c);
  inverse.normalize();
  return *this *= inverse;
}

BiRational BiRational::operator-() const {
  BiRational r = *this;
  r.num_ = -r.num_;
  return r;
}

bool operator==(const BiRational& a, const BiRational& b) {
  return a.num_ * b.expanded_denominator() == b.num_ * a.expanded_denominator();
}

std::string BiRational::to_string() const {
  const auto [num, den] = as_polynomial_ratio();
  if (den == LaurentPoly(mpz_class(1))) return num.to_string();
  return "(" + num.to_string() + ") / (" + den.to_string() + ")";
}

}  // namespace ultragas
