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

#include "ultragas/exponents.hpp"

#include <stdexcept>

namespace ultragas {

namespace {

std::size_t pair_count(int n) { return n < 2 ? 0 : static_cast<std::size_t>(n) * (n - 1) / 2; }

void check_order(int n) {
  if (n < 0 || n > kMaxLabel) {
    throw std::invalid_argument("particle count must lie in [0, " + std::to_string(kMaxLabel) + "]");
  }
}

Complex to_complex(const Rational& r) { return {r.get_d(), 0.0}; }

}  // namespace

std::size_t ExponentSpec::pair_index(int i, int j) const {
  if (i > j) std::swap(i, j);
  if (i < 1 || j > n_ || i == j) {
    throw std::invalid_argument("pair (" + std::to_string(i) + "," + std::to_string(j) +
                                ") is not a pair of distinct labels in [1, " +
                                std::to_string(n_) + "]");
  }
  // Row-major over the strict upper triangle.
  const std::size_t row = i - 1;
  return row * n_ - row * (row + 1) / 2 + (j - i - 1);
}

ExponentSpec ExponentSpec::direct(int n, std::vector<Rational> entries) {
  check_order(n);
  if (entries.size() != pair_count(n)) {
    throw std::invalid_argument("expected " + std::to_string(pair_count(n)) +
                                " exponent entries, got " + std::to_string(entries.size()));
  }
  ExponentSpec spec;
  spec.n_ = n;
  spec.entries_ = std::move(entries);
  return spec;
}

ExponentSpec ExponentSpec::direct(int n, std::vector<Complex> entries) {
  check_order(n);
  if (entries.size() != pair_count(n)) {
    throw std::invalid_argument("expected " + std::to_string(pair_count(n)) +
                                " exponent entries, got " + std::to_string(entries.size()));
  }
  ExponentSpec spec;
  spec.n_ = n;
  spec.entries_ = std::move(entries);
  return spec;
}

ExponentSpec ExponentSpec::from_charges(std::vector<Rational> charges, Rational beta) {
  const int n = static_cast<int>(charges.size());
  check_order(n);
  std::vector<Rational> entries;
  entries.reserve(pair_count(n));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) entries.push_back(charges[i] * charges[j] * beta);
  }
  ExponentSpec spec = direct(n, std::move(entries));
  spec.charges_ = ChargeProvenance{std::move(charges), std::move(beta)};
  return spec;
}

ExponentSpec ExponentSpec::from_charges(std::vector<Rational> charges, Complex beta) {
  const int n = static_cast<int>(charges.size());
  check_order(n);
  std::vector<Complex> entries;
  entries.reserve(pair_count(n));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      entries.push_back(Rational(charges[i] * charges[j]).get_d() * beta);
    }
  }
  ExponentSpec spec = direct(n, std::move(entries));
  spec.charges_ = ChargeProvenance{std::move(charges), beta};
  return spec;
}

ExponentSpec ExponentSpec::uniform(int n, Rational beta) {
  check_order(n);
  return from_charges(std::vector<Rational>(n, Rational(1)), std::move(beta));
}

ExponentSpec ExponentSpec::uniform(int n, Complex beta) {
  check_order(n);
  return from_charges(std::vector<Rational>(n, Rational(1)), beta);
}

const Rational& ExponentSpec::exact(int i, int j) const {
  const auto* values = std::get_if<std::vector<Rational>>(&entries_);
  if (values == nullptr) throw std::logic_error("exponent entries are not exact");
  return (*values)[pair_index(i, j)];
}

Complex ExponentSpec::numeric(int i, int j) const {
  const std::size_t k = pair_index(i, j);
  if (const auto* values = std::get_if<std::vector<Rational>>(&entries_)) {
    return to_complex((*values)[k]);
  }
  return std::get<std::vector<Complex>>(entries_)[k];
}

bool ExponentSpec::integral() const {
  const auto* values = std::get_if<std::vector<Rational>>(&entries_);
  if (values == nullptr) return false;
  for (const Rational& r : *values) {
    if (r.get_den() != 1) return false;
  }
  return true;
}

Rational ExponentSpec::pair_sum_exact(Mask lambda) const {
  Rational sum = 0;
  for (int i = 1; i <= n_; ++i) {
    if (!((lambda >> (i - 1)) & 1u)) continue;
    for (int j = i + 1; j <= n_; ++j) {
      if ((lambda >> (j - 1)) & 1u) sum += exact(i, j);
    }
  }
  return sum;
}

Complex ExponentSpec::pair_sum_numeric(Mask lambda) const {
  Complex sum = 0;
  for (int i = 1; i <= n_; ++i) {
    if (!((lambda >> (i - 1)) & 1u)) continue;
    for (int j = i + 1; j <= n_; ++j) {
      if ((lambda >> (j - 1)) & 1u) sum += numeric(i, j);
    }
  }
  return sum;
}

Rational ExponentSpec::charge_pair_sum(Mask lambda) const {
  if (!charges_) throw std::logic_error("exponent spec has no charge provenance");
  Rational sum = 0;
  const auto& c = charges_->charges;
  for (int i = 1; i <= n_; ++i) {
    if (!((lambda >> (i - 1)) & 1u)) continue;
    for (int j = i + 1; j <= n_; ++j) {
      if ((lambda >> (j - 1)) & 1u) sum += c[i - 1] * c[j - 1];
    }
  }
  return sum;
}

ExponentSpec ExponentSpec::restrict_to(const IndexSet& members) const {
  if (!members.is_subset_of(IndexSet::range(n_))) {
    throw std::invalid_argument("restriction " + members.to_string() + " not inside [" +
                                std::to_string(n_) + "]");
  }
  const auto& m = members.members();
  const int k = static_cast<int>(m.size());
  if (charges_) {
    std::vector<Rational> sub;
    for (int label : m) sub.push_back(charges_->charges[label - 1]);
    return std::visit([&](const auto& beta) { return from_charges(sub, beta); }, charges_->beta);
  }
  if (is_exact()) {
    std::vector<Rational> sub;
    for (int a = 0; a < k; ++a) {
      for (int b = a + 1; b < k; ++b) sub.push_back(exact(m[a], m[b]));
    }
    return direct(k, std::move(sub));
  }
  std::vector<Complex> sub;
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) sub.push_back(numeric(m[a], m[b]));
  }
  return direct(k, std::move(sub));
}

ExponentSpec ExponentSpec::permuted(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != n_) throw std::invalid_argument("permutation size mismatch");
  std::vector<int> inverse(n_, 0);
  for (int i = 0; i < n_; ++i) {
    if (perm[i] < 1 || perm[i] > n_ || inverse[perm[i] - 1] != 0) {
      throw std::invalid_argument("not a permutation of [N]");
    }
    inverse[perm[i] - 1] = i + 1;
  }
  if (charges_) {
    std::vector<Rational> c(n_);
    for (int i = 0; i < n_; ++i) c[perm[i] - 1] = charges_->charges[i];
    return std::visit([&](const auto& beta) { return from_charges(c, beta); }, charges_->beta);
  }
  if (is_exact()) {
    std::vector<Rational> e;
    for (int i = 1; i <= n_; ++i) {
      for (int j = i + 1; j <= n_; ++j) e.push_back(exact(inverse[i - 1], inverse[j - 1]));
    }
    return direct(n_, std::move(e));
  }
  std::vector<Complex> e;
  for (int i = 1; i <= n_; ++i) {
    for (int j = i + 1; j <= n_; ++j) e.push_back(numeric(inverse[i - 1], inverse[j - 1]));
  }
  return direct(n_, std::move(e));
}

ExponentValue e_lambda(const ExponentSpec& spec, const IndexSet& lambda) {
  if (!lambda.is_subset_of(IndexSet::range(spec.order()))) {
    throw std::invalid_argument("lambda=" + lambda.to_string() + " is not a subset of [" +
                                std::to_string(spec.order()) + "]");
  }
  const long base = static_cast<long>(lambda.size()) - 1;
  if (spec.is_exact()) return Rational(base) + spec.pair_sum_exact(lambda.mask());
  return Complex(static_cast<double>(base), 0.0) + spec.pair_sum_numeric(lambda.mask());
}

double real_part(const ExponentValue& v) {
  if (const auto* r = std::get_if<Rational>(&v)) return r->get_d();
  return std::get<Complex>(v).real();
}

std::optional<IndexSet> domain_violation(const ExponentSpec& spec, Mask within) {
  within &= full_mask(spec.order());
  // Ascending submasks of `within`.
  for (Mask sub = 0;;) {
    sub = (sub - within) & within;
    if (sub == 0) break;
    if (popcount(sub) < 2) continue;
    const long base = popcount(sub) - 1;
    bool positive;
    if (spec.is_exact()) {
      positive = Rational(base) + spec.pair_sum_exact(sub) > 0;
    } else {
      positive = static_cast<double>(base) + spec.pair_sum_numeric(sub).real() > 0.0;
    }
    if (!positive) return IndexSet::from_mask(sub);
  }
  return std::nullopt;
}

bool in_domain(const ExponentSpec& spec) {
  return !domain_violation(spec, full_mask(spec.order())).has_value();
}

bool in_domain(const ExponentSpec& spec, const IndexSet& within) {
  return !domain_violation(spec, within.mask()).has_value();
}

std::string describe_violation(const IndexSet& lambda) {
  return "Re(e_lambda) <= 0 for lambda=" + lambda.to_string();
}

}  // namespace ultragas
