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

#ifndef ULTRAGAS_EXPONENTS_HPP
#define ULTRAGAS_EXPONENTS_HPP

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "ultragas/index_set.hpp"

namespace ultragas {

using Rational = mpq_class;
using Complex = std::complex<double>;

/// Value of a linear form e_lambda(s); shares the kind of the exponent entries.
using ExponentValue = std::variant<Rational, Complex>;

/// Charge vector and inverse temperature from which s_ij = q_i * q_j * beta.
struct ChargeProvenance {
  std::vector<Rational> charges;
  std::variant<Rational, Complex> beta;
};

/// The exponent tuple s = (s_ij), 1 <= i < j <= N.
///
/// Entries are either all exact rationals or all complex floats. A spec built
/// from charges remembers them so that symbolic evaluation can express every
/// s_ij as an integer multiple of beta.
class ExponentSpec {
 public:
  /// Entries listed in pair order (1,2), (1,3), ..., (1,N), (2,3), ...
  static ExponentSpec direct(int n, std::vector<Rational> entries);
  static ExponentSpec direct(int n, std::vector<Complex> entries);
  static ExponentSpec from_charges(std::vector<Rational> charges, Rational beta);
  static ExponentSpec from_charges(std::vector<Rational> charges, Complex beta);
  /// One-component gas: every charge equal to 1.
  static ExponentSpec uniform(int n, Rational beta);
  static ExponentSpec uniform(int n, Complex beta);
  static ExponentSpec zero(int n) { return uniform(n, Rational(0)); }

  int order() const { return n_; }
  bool is_exact() const { return std::holds_alternative<std::vector<Rational>>(entries_); }
  const std::optional<ChargeProvenance>& charges() const { return charges_; }

  /// 1-based labels, i != j in either order.
  const Rational& exact(int i, int j) const;
  Complex numeric(int i, int j) const;

  /// True when the entries are exact and all integers.
  bool integral() const;

  /// Sum of s_ij over pairs inside `lambda`.
  Rational pair_sum_exact(Mask lambda) const;
  Complex pair_sum_numeric(Mask lambda) const;
  /// Sum of q_i * q_j over pairs inside `lambda`; requires charge provenance.
  Rational charge_pair_sum(Mask lambda) const;

  /// Restricts to a relabeled sub-instance on `members` (labels become
  /// 1..|members| in increasing order). Charge provenance is kept.
  ExponentSpec restrict_to(const IndexSet& members) const;

  /// Copy with the labels permuted: new label perm[i-1] receives old label i.
  ExponentSpec permuted(const std::vector<int>& perm) const;

 private:
  ExponentSpec() = default;
  std::size_t pair_index(int i, int j) const;

  int n_ = 0;
  std::variant<std::vector<Rational>, std::vector<Complex>> entries_;
  std::optional<ChargeProvenance> charges_;
};

/// e_lambda(s) = #lambda - 1 + sum_{i<j in lambda} s_ij, with e_empty = -1.
/// Throws std::invalid_argument when lambda is not a subset of [N].
ExponentValue e_lambda(const ExponentSpec& spec, const IndexSet& lambda);

/// Real part of an exponent value as a double.
double real_part(const ExponentValue& v);

/// First subset lambda of `within` (#lambda > 1, in increasing mask order)
/// with Re(e_lambda) <= 0, if any.
std::optional<IndexSet> domain_violation(const ExponentSpec& spec, Mask within);

/// Membership in the convergence domain: Re(e_lambda) > 0 for all 2^N - N - 1
/// subsets with at least two elements.
bool in_domain(const ExponentSpec& spec);

/// Same test restricted to subsets of `within`.
bool in_domain(const ExponentSpec& spec, const IndexSet& within);

/// Diagnostic text naming the violated constraint, e.g.
/// "Re(e_lambda) <= 0 for lambda={1,2,3}".
std::string describe_violation(const IndexSet& lambda);

}  // namespace ultragas

#endif  // ULTRAGAS_EXPONENTS_HPP
