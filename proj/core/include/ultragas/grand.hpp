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

#ifndef ULTRAGAS_GRAND_HPP
#define ULTRAGAS_GRAND_HPP

#include <string>
#include <vector>

#include "ultragas/engine.hpp"

namespace ultragas {

using Coefficients = std::vector<ScalarValue>;

/// Truncated exponential generating function sum_N Z_N f^N / N! of the
/// one-component gas on a space; coefficients()[N] = Z_N / N!.
struct EgfSeries {
  SpaceSpec space;
  Rational q;
  Rational beta;
  Mode mode = Mode::exact;
  Coefficients coefficients;

  int n_max() const { return static_cast<int>(coefficients.size()) - 1; }
};

/// Series for R, P or the projective line (arbitrary balls are accepted
/// too). Exact mode evaluates every coefficient by chain summation and needs
/// an integer beta; floating mode uses the recurrence (R and the projective
/// line directly, balls through Z_j(pi^v R) = q^{-v(j + C(j,2) beta)} Z_j(R)).
EgfSeries egf(const SpaceSpec& space, const Rational& q, const Rational& beta, int n_max, Mode mode,
              const EngineOptions& options = {});

/// Cauchy product truncated to the common length.
Coefficients series_mul(const Coefficients& a, const Coefficients& b);
/// a^m truncated to n_max + 1 terms; requires a[0] = 1 and at least n_max + 1
/// coefficients.
Coefficients series_pow(const Coefficients& a, int m, int n_max);
/// c_N -> sigma^N c_N, i.e. f -> sigma f.
Coefficients series_scale_fugacity(const Coefficients& a, const ScalarValue& sigma);

/// f d/df log Z(f) of the truncated series at a real fugacity; carries no
/// truncation-error guarantee.
double expected_particles(const Coefficients& a, double f);

struct LawRow {
  int n = 0;
  ScalarValue lhs;
  ScalarValue rhs;
  bool pass = false;
};

struct LawReport {
  std::string law;  // "q", "q1" or "rp"
  long q = 0;
  Rational beta;
  Mode mode = Mode::exact;
  /// Set when beta lies outside beta > 0 and the check ran on request.
  bool extended = false;
  std::vector<LawRow> rows;

  bool passed() const;
};

struct VerifyOptions {
  /// Permit beta <= 0 (inside the analyticity half-plane) instead of
  /// rejecting it.
  bool extended = false;
  /// Relative tolerance in floating mode.
  double tolerance = 1e-10;
  EngineOptions engine;
};

/// Z(f, R) = Z(f, P)^q, coefficientwise.
LawReport verify_power_law_q(long q, const Rational& beta, int n_max, Mode mode,
                             const VerifyOptions& options = {});
/// Z(f, proj) = Z(q f / (q + 1), P)^{q+1}, coefficientwise.
LawReport verify_power_law_q1(long q, const Rational& beta, int n_max, Mode mode,
                              const VerifyOptions& options = {});
/// Z(f, proj) = Z(q f / (q + 1), R) Z(q f / (q + 1), P), coefficientwise.
LawReport verify_RP_factorization(long q, const Rational& beta, int n_max, Mode mode,
                                  const VerifyOptions& options = {});

/// The three laws above, sharing the series they have in common.
std::vector<LawReport> verify_all(long q, const Rational& beta, int n_max, Mode mode,
                                  const VerifyOptions& options = {});

/// Coefficient N of the product in verify_RP_factorization written out as
/// sum_k sigma^N c_{N-k}(R) c_k(P), sigma = q / (q + 1).
ScalarValue rp_coefficient(const Coefficients& r, const Coefficients& p, const ScalarValue& sigma, int n);

}  // namespace ultragas

#endif  // ULTRAGAS_GRAND_HPP
