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

#include "ultragas/grand.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

#include "ultragas/recurrence.hpp"

namespace ultragas {

namespace {

Rational factorial(int n) {
  mpz_class f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return Rational(f);
}

ScalarValue one_of(Mode mode) {
  if (mode == Mode::exact) return ScalarValue(Rational(1));
  return ScalarValue(Complex(1.0, 0.0));
}

ScalarValue numeric_scalar(Mode mode, const Rational& r) {
  if (mode == Mode::exact) return ScalarValue(r);
  return ScalarValue(Complex(r.get_d(), 0.0));
}

Complex fast_value(const SpaceSpec& space, int n, double q, double beta) {
  if (space.kind == SpaceSpec::Kind::projective) return z_proj_fast(n, q, beta);
  const double shift = static_cast<double>(n) + 0.5 * n * (n - 1) * beta;
  return z_R_fast(n, q, beta) * std::pow(q, -space.v * shift);
}

}  // namespace

EgfSeries egf(const SpaceSpec& space, const Rational& q, const Rational& beta, int n_max, Mode mode,
              const EngineOptions& options) {
  if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");
  if (!(q > 0)) throw std::invalid_argument("q must be positive");
  if (mode == Mode::symbolic) throw std::invalid_argument("series are available in exact and float modes");
  if (mode == Mode::exact && beta.get_den() != 1) {
    throw std::invalid_argument("exact mode requires an integer beta");
  }
  EgfSeries series{space, q, beta, mode, {}};
  series.coefficients.reserve(n_max + 1);
  series.coefficients.push_back(one_of(mode));
  for (int n = 1; n <= n_max; ++n) {
    ScalarValue z;
    if (mode == Mode::exact) {
      const ExponentSpec spec = ExponentSpec::uniform(n, beta);
      z = evaluate(space, spec, Field::exact(q), options);
    } else {
      z = ScalarValue(fast_value(space, n, q.get_d(), beta.get_d()));
    }
    series.coefficients.push_back(z / numeric_scalar(mode, factorial(n)));
  }
  return series;
}

Coefficients series_mul(const Coefficients& a, const Coefficients& b) {
  if (a.size() != b.size()) throw std::invalid_argument("series length mismatch");
  Coefficients out;
  out.reserve(a.size());
  for (std::size_t n = 0; n < a.size(); ++n) {
    ScalarValue acc = ScalarValue::zero_like(a[0]);
    for (std::size_t k = 0; k <= n; ++k) acc += a[k] * b[n - k];
    out.push_back(std::move(acc));
  }
  return out;
}

Coefficients series_pow(const Coefficients& a, int m, int n_max) {
  if (m < 0) throw std::invalid_argument("series power must be non-negative");
  if (n_max < 0 || static_cast<int>(a.size()) < n_max + 1) {
    throw std::invalid_argument("series length mismatch");
  }
  if (!(a[0] == ScalarValue::one_like(a[0]))) {
    throw std::invalid_argument("series power requires constant term 1");
  }
  Coefficients base(a.begin(), a.begin() + n_max + 1);
  Coefficients result(n_max + 1, ScalarValue::zero_like(a[0]));
  result[0] = ScalarValue::one_like(a[0]);
  for (int e = m; e > 0; e >>= 1) {
    if (e & 1) result = series_mul(result, base);
    if (e > 1) base = series_mul(base, base);
  }
  return result;
}

Coefficients series_scale_fugacity(const Coefficients& a, const ScalarValue& sigma) {
  Coefficients out;
  out.reserve(a.size());
  if (a.empty()) return out;
  ScalarValue power = ScalarValue::one_like(sigma);
  for (const ScalarValue& c : a) {
    out.push_back(c * power);
    power *= sigma;
  }
  return out;
}

double expected_particles(const Coefficients& a, double f) {
  double value = 0.0, derivative = 0.0, power = 1.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    const double c = a[n].to_complex().real();
    value += c * power;
    derivative += static_cast<double>(n) * c * power;
    power *= f;
  }
  return derivative / value;
}

bool LawReport::passed() const {
  for (const LawRow& row : rows) {
    if (!row.pass) return false;
  }
  return true;
}

ScalarValue rp_coefficient(const Coefficients& r, const Coefficients& p, const ScalarValue& sigma, int n) {
  if (n < 0 || n >= static_cast<int>(r.size()) || n >= static_cast<int>(p.size())) {
    throw std::invalid_argument("series length mismatch");
  }
  ScalarValue acc = ScalarValue::zero_like(r[0]);
  for (int k = 0; k <= n; ++k) acc += r[n - k] * p[k];
  ScalarValue power = ScalarValue::one_like(sigma);
  for (int k = 0; k < n; ++k) power *= sigma;
  return power * acc;
}

namespace {

enum class Law { q, q1, rp };

// Series shared by the three laws, computed on first use.
class SeriesCache {
 public:
  SeriesCache(long q, const Rational& beta, int n_max, Mode mode, const EngineOptions& options)
      : q_(q), beta_(beta), n_max_(n_max), mode_(mode), options_(options) {}

  const Coefficients& get(const SpaceSpec& space) {
    auto& slot = space.kind == SpaceSpec::Kind::projective ? proj_ : space.v == 0 ? r_ : p_;
    if (!slot) slot = egf(space, Rational(q_), beta_, n_max_, mode_, options_).coefficients;
    return *slot;
  }

 private:
  long q_;
  Rational beta_;
  int n_max_;
  Mode mode_;
  EngineOptions options_;
  std::optional<Coefficients> r_, p_, proj_;
};

void check_law_arguments(long q, const Rational& beta, int n_max, const VerifyOptions& options) {
  if (q < 2) throw std::invalid_argument("power laws require an integer q >= 2");
  if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");
  if (!(beta > 0) && !options.extended) {
    throw std::invalid_argument("power laws are asserted for beta > 0; pass the extended flag to check other beta");
  }
}

LawReport verify_law(Law law, long q, const Rational& beta, int n_max, Mode mode, const VerifyOptions& options,
                     SeriesCache& cache) {
  LawReport report;
  report.law = law == Law::q ? "q" : law == Law::q1 ? "q1" : "rp";
  report.q = q;
  report.beta = beta;
  report.mode = mode;
  report.extended = !(beta > 0);

  const ScalarValue sigma = numeric_scalar(mode, Rational(q, q + 1));
  const Coefficients& p = cache.get(SpaceSpec::P());
  Coefficients lhs, rhs;
  switch (law) {
    case Law::q:
      lhs = cache.get(SpaceSpec::R());
      rhs = series_pow(p, static_cast<int>(q), n_max);
      break;
    case Law::q1:
      lhs = cache.get(SpaceSpec::projective());
      rhs = series_pow(series_scale_fugacity(p, sigma), static_cast<int>(q + 1), n_max);
      break;
    case Law::rp:
      lhs = cache.get(SpaceSpec::projective());
      rhs = series_mul(series_scale_fugacity(cache.get(SpaceSpec::R()), sigma), series_scale_fugacity(p, sigma));
      break;
  }
  for (int n = 0; n <= n_max; ++n) {
    LawRow row{n, lhs[n], rhs[n], false};
    row.pass = mode == Mode::exact ? lhs[n] == rhs[n] : approx_equal(lhs[n], rhs[n], options.tolerance);
    report.rows.push_back(std::move(row));
  }
  return report;
}

LawReport verify_one(Law law, long q, const Rational& beta, int n_max, Mode mode, const VerifyOptions& options) {
  check_law_arguments(q, beta, n_max, options);
  SeriesCache cache(q, beta, n_max, mode, options.engine);
  return verify_law(law, q, beta, n_max, mode, options, cache);
}

}  // namespace

LawReport verify_power_law_q(long q, const Rational& beta, int n_max, Mode mode, const VerifyOptions& options) {
  return verify_one(Law::q, q, beta, n_max, mode, options);
}

LawReport verify_power_law_q1(long q, const Rational& beta, int n_max, Mode mode, const VerifyOptions& options) {
  return verify_one(Law::q1, q, beta, n_max, mode, options);
}

LawReport verify_RP_factorization(long q, const Rational& beta, int n_max, Mode mode,
                                  const VerifyOptions& options) {
  return verify_one(Law::rp, q, beta, n_max, mode, options);
}

std::vector<LawReport> verify_all(long q, const Rational& beta, int n_max, Mode mode, const VerifyOptions& options) {
  check_law_arguments(q, beta, n_max, options);
  SeriesCache cache(q, beta, n_max, mode, options.engine);
  std::vector<LawReport> reports;
  for (Law law : {Law::q, Law::q1, Law::rp}) reports.push_back(verify_law(law, q, beta, n_max, mode, options, cache));
  return reports;
}

}  // namespace ultragas
