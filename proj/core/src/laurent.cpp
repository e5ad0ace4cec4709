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

#include "ultragas/laurent.hpp"

#include <limits>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace ultragas {

namespace {

using UPoly = std::vector<mpz_class>;  // coefficient of x^i at index i

UPoly divide_univariate(UPoly num, const UPoly& den) {
  UPoly quot(num.size() - den.size() + 1, 0);
  for (std::size_t i = quot.size(); i-- > 0;) {
    const mpz_class c = num[i + den.size() - 1] / den.back();
    quot[i] = c;
    for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
  }
  return quot;
}

const UPoly& cyclotomic_univariate(int d) {
  static std::recursive_mutex mu;
  static std::map<int, UPoly> cache;
  std::lock_guard<std::recursive_mutex> lock(mu);
  if (auto it = cache.find(d); it != cache.end()) return it->second;
  UPoly p(d + 1, 0);
  p[0] = -1;
  p[d] = 1;
  for (int k = 1; k < d; ++k) {
    if (d % k == 0) p = divide_univariate(p, cyclotomic_univariate(k));
  }
  return cache.emplace(d, std::move(p)).first->second;
}

}  // namespace

LaurentPoly::LaurentPoly(const mpz_class& constant) { add_term({0, 0}, constant); }

LaurentPoly LaurentPoly::monomial(const mpz_class& coeff, int deg_q, int deg_y) {
  LaurentPoly p;
  p.add_term({deg_q, deg_y}, coeff);
  return p;
}

LaurentPoly LaurentPoly::cyclotomic(int d, int a, int b) {
  if (d < 1) throw std::invalid_argument("cyclotomic index must be positive");
  const UPoly& phi = cyclotomic_univariate(d);
  LaurentPoly p;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (phi[i] != 0) p.add_term({a * static_cast<int>(i), b * static_cast<int>(i)}, phi[i]);
  }
  return p;
}

void LaurentPoly::add_term(const Monomial& m, const mpz_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int LaurentPoly::min_deg_q() const {
  if (terms_.empty()) return 0;
  return terms_.begin()->first.first;
}

int LaurentPoly::min_deg_y() const {
  if (terms_.empty()) return 0;
  int lo = std::numeric_limits<int>::max();
  for (const auto& [m, c] : terms_) lo = std::min(lo, m.second);
  return lo;
}

mpz_class LaurentPoly::content() const {
  mpz_class g = 0;
  for (const auto& [m, c] : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

LaurentPoly LaurentPoly::shifted(int dq, int dy) const {
  LaurentPoly out;
  for (const auto& [m, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), Monomial{m.first + dq, m.second + dy}, c);
  return out;
}

std::optional<LaurentPoly> LaurentPoly::divide_exact(const LaurentPoly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (is_zero()) return LaurentPoly{};
  const int sq = min_deg_q(), sy = min_deg_y();
  const int dq = divisor.min_deg_q(), dy = divisor.min_deg_y();
  LaurentPoly rem = shifted(-sq, -sy);
  const LaurentPoly den = divisor.shifted(-dq, -dy);
  const auto& [lead_m, lead_c] = *den.terms_.rbegin();
  LaurentPoly quot;
  while (!rem.is_zero()) {
    const auto [m, c] = *rem.terms_.rbegin();
    const int eq = m.first - lead_m.first;
    const int ey = m.second - lead_m.second;
    if (eq < 0 || ey < 0 || !mpz_divisible_p(c.get_mpz_t(), lead_c.get_mpz_t())) {
      return std::nullopt;
    }
    const mpz_class factor = c / lead_c;
    quot.add_term({eq, ey}, factor);
    for (const auto& [dm, dc] : den.terms_) {
      rem.add_term({dm.first + eq, dm.second + ey}, -factor * dc);
    }
  }
  return quot.shifted(sq - dq, sy - dy);
}

LaurentPoly LaurentPoly::divided_by_constant(const mpz_class& c) const {
  LaurentPoly out;
  for (const auto& [m, v] : terms_) {
    if (!mpz_divisible_p(v.get_mpz_t(), c.get_mpz_t())) {
      throw std::logic_error("constant does not divide every coefficient");
    }
    out.terms_.emplace_hint(out.terms_.end(), m, v / c);
  }
  return out;
}

std::complex<double> LaurentPoly::evaluate(std::complex<double> q, std::complex<double> y) const {
  std::complex<double> sum = 0;
  for (const auto& [m, c] : terms_) {
    sum += c.get_d() * std::pow(q, m.first) * std::pow(y, m.second);
  }
  return sum;
}

namespace {

mpq_class rational_pow(const mpq_class& base, int e) {
  if (e < 0) {
    if (base == 0) throw std::domain_error("zero raised to a negative power");
    return rational_pow(1 / base, -e);
  }
  mpq_class out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
  return out;
}

}  // namespace

mpq_class LaurentPoly::evaluate(const mpq_class& q, const mpq_class& y) const {
  mpq_class sum = 0;
  for (const auto& [m, c] : terms_) sum += mpq_class(c) * rational_pow(q, m.first) * rational_pow(y, m.second);
  return sum;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      out.add_term({ma.first + mb.first, ma.second + mb.second}, ca * cb);
    }
  }
  return out;
}

LaurentPoly operator*(LaurentPoly a, const mpz_class& c) {
  if (c == 0) return LaurentPoly{};
  for (auto& [m, v] : a.terms_) v *= c;
  return a;
}

LaurentPoly LaurentPoly::operator-() const { return *this * mpz_class(-1); }

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    mpz_class mag = abs(c);
    if (s.empty()) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    const bool unit = mag == 1 && (m.first != 0 || m.second != 0);
    std::string body = unit ? "" : mag.get_str();
    auto factor = [&](const char* var, int e) {
      if (e == 0) return;
      if (!body.empty()) body += "*";
      body += var;
      if (e != 1) body += "^" + (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
    };
    factor("q", m.first);
    factor("y", m.second);
    s += body;
  }
  return s;
}

}  // namespace ultragas
