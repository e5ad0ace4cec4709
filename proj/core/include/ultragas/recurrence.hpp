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

#ifndef ULTRAGAS_RECURRENCE_HPP
#define ULTRAGAS_RECURRENCE_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ultragas/engine.hpp"

namespace ultragas {

/// Thrown when a sinh denominator of the recurrence vanishes.
class RecurrencePoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// |t| below this is evaluated by the t = 0 branch.
inline constexpr double kRecurrenceZeroT = 1e-12;

/// Complex number stored as mantissa * 2^exponent, so magnitudes far outside
/// the double range keep full relative precision.
class ScaledComplex {
 public:
  ScaledComplex() = default;
  ScaledComplex(Complex value);
  /// mantissa * 2^exponent.
  ScaledComplex(Complex mantissa, std::int64_t exponent);
  static ScaledComplex from_log(Complex log_value);

  bool is_zero() const { return mantissa_ == Complex(0.0, 0.0); }
  Complex mantissa() const { return mantissa_; }
  std::int64_t exponent() const { return exponent_; }
  /// Nearest complex double (may overflow to inf or underflow to 0).
  Complex value() const;
  /// log of the value (real part = log magnitude); -inf for zero.
  Complex log() const;
  /// Real part with 17 significant digits, exponent unrestricted
  /// ("1.2345678901234567e-4012").
  std::string real_to_string() const;

  ScaledComplex& operator*=(const ScaledComplex& o);
  ScaledComplex& operator+=(const ScaledComplex& o);
  friend ScaledComplex operator*(ScaledComplex a, const ScaledComplex& b) { return a *= b; }
  friend ScaledComplex operator+(ScaledComplex a, const ScaledComplex& b) { return a += b; }

 private:
  void renormalize();

  Complex mantissa_ = 0.0;
  std::int64_t exponent_ = 0;
};

/// F_0..F_{n_max} of the quadratic recurrence at fixed (t, beta).
class RecurrenceTable {
 public:
  RecurrenceTable(double t, Complex beta, std::vector<ScaledComplex> values, long working_bits)
      : t_(t), beta_(beta), values_(std::move(values)), working_bits_(working_bits) {}

  double t() const { return t_; }
  Complex beta() const { return beta_; }
  int n_max() const { return static_cast<int>(values_.size()) - 1; }
  /// F_n as a complex double (may underflow for large n).
  Complex operator[](int n) const { return values_.at(n).value(); }
  const ScaledComplex& scaled(int n) const { return values_.at(n); }
  /// Binary precision the table was computed at.
  long working_bits() const { return working_bits_; }

 private:
  double t_;
  Complex beta_;
  std::vector<ScaledComplex> values_;
  long working_bits_;
};

/// Builds F_0..F_{n_max}; F_0 = F_1 = 1 and for N >= 2
///   F_N = sum_{k=1}^{N-1} (k/N) sinh((t/2)[(N + C(N,2) beta)(1 - 2k/N) + 1])
///                            / sinh((t/2)[(N + C(N,2) beta) - 1]) F_{N-k} F_k,
/// with the ratio of sinh arguments replaced by the ratio of the bracketed
/// linear terms when |t| < kRecurrenceZeroT. The sum cancels heavily, so it
/// runs in multiprecision arithmetic under a forward error bound, raising the
/// working precision until every entry is accurate to double precision.
/// Throws DivergenceError ("outside half-plane") unless Re(beta) > -2/n_max,
/// and RecurrencePoleError when a denominator vanishes.
RecurrenceTable f_table(int n_max, double t, Complex beta);

/// N! q^{C(N,2) beta / 2} F_N(log q, beta); q > 0. log q is taken at the
/// working precision: near integer q the real-q extension is steep enough
/// that a double-rounded log q would dominate the error.
ScaledComplex z_R_fast_scaled(int n, double q, Complex beta);
Complex z_R_fast(int n, double q, Complex beta);

/// N! sum_{k=0}^N cosh((log q / 2)(N + C(N,2) beta)(1 - 2k/N))
///             / (2 cosh(log q / 2))^N * F_{N-k} F_k; q > 0.
ScaledComplex z_proj_fast_scaled(int n, double q, Complex beta);
Complex z_proj_fast(int n, double q, Complex beta);

/// The q -> 1 limits: N! F_N(0, beta) on R, and N! 2^{-N} sum_k F_{N-k} F_k
/// (at t = 0) on the projective line. `space` must be R or proj.
ScaledComplex q_to_1_limit_scaled(int n, Complex beta, const SpaceSpec& space);
Complex q_to_1_limit(int n, Complex beta, const SpaceSpec& space);

/// F_N and Z_N for every N <= n_max from one table: at t = log q, or at
/// t = 0 (the q -> 1 limits) when `q_to_1` is set. `space` is R or proj.
struct RecurrenceRows {
  double t = 0;
  long working_bits = 0;
  std::vector<ScaledComplex> f;
  std::vector<ScaledComplex> z;
};
RecurrenceRows recurrence_rows(int n_max, double q, Complex beta, const SpaceSpec& space, bool q_to_1 = false);

}  // namespace ultragas

#endif  // ULTRAGAS_RECURRENCE_HPP
