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

#include "ultragas/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <mpfr.h>

namespace ultragas {

ScaledComplex::ScaledComplex(Complex value) : mantissa_(value) { renormalize(); }

ScaledComplex::ScaledComplex(Complex mantissa, std::int64_t exponent) : mantissa_(mantissa), exponent_(exponent) {
  renormalize();
}

ScaledComplex ScaledComplex::from_log(Complex log_value) {
  if (!std::isfinite(log_value.real())) return {};
  const double e2 = std::floor(log_value.real() / std::numbers::ln2);
  const double rest = log_value.real() - e2 * std::numbers::ln2;
  return ScaledComplex(std::polar(std::exp(rest), log_value.imag()), static_cast<std::int64_t>(e2));
}

namespace {

double ldexp_clamped(double x, std::int64_t e) {
  return std::ldexp(x, static_cast<int>(std::clamp<std::int64_t>(e, -100000, 100000)));
}

}  // namespace

Complex ScaledComplex::value() const {
  return {ldexp_clamped(mantissa_.real(), exponent_), ldexp_clamped(mantissa_.imag(), exponent_)};
}

Complex ScaledComplex::log() const {
  if (is_zero()) return {-std::numeric_limits<double>::infinity(), 0.0};
  return std::log(mantissa_) + static_cast<double>(exponent_) * std::numbers::ln2;
}

std::string ScaledComplex::real_to_string() const {
  if (mantissa_.real() == 0.0) return "0";
  mpfr_t x;
  mpfr_init2(x, 64);
  mpfr_set_d(x, mantissa_.real(), MPFR_RNDN);
  mpfr_mul_2si(x, x, static_cast<long>(exponent_), MPFR_RNDN);
  char* text = nullptr;
  mpfr_asprintf(&text, "%.16Re", x);
  std::string out(text);
  mpfr_free_str(text);
  mpfr_clear(x);
  return out;
}

void ScaledComplex::renormalize() {
  const double m = std::max(std::abs(mantissa_.real()), std::abs(mantissa_.imag()));
  if (m == 0.0) {
    mantissa_ = 0.0;
    exponent_ = 0;
    return;
  }
  int shift = 0;
  std::frexp(m, &shift);
  mantissa_ = {std::ldexp(mantissa_.real(), -shift), std::ldexp(mantissa_.imag(), -shift)};
  exponent_ += shift;
}

ScaledComplex& ScaledComplex::operator*=(const ScaledComplex& o) {
  if (is_zero() || o.is_zero()) return *this = ScaledComplex();
  mantissa_ *= o.mantissa_;
  exponent_ += o.exponent_;
  renormalize();
  return *this;
}

ScaledComplex& ScaledComplex::operator+=(const ScaledComplex& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (exponent_ >= o.exponent_) {
    const std::int64_t gap = exponent_ - o.exponent_;
    mantissa_ += Complex(ldexp_clamped(o.mantissa_.real(), -gap), ldexp_clamped(o.mantissa_.imag(), -gap));
  } else {
    const std::int64_t gap = o.exponent_ - exponent_;
    mantissa_ = Complex(ldexp_clamped(mantissa_.real(), -gap), ldexp_clamped(mantissa_.imag(), -gap)) + o.mantissa_;
    exponent_ = o.exponent_;
  }
  renormalize();
  return *this;
}

namespace {

// Owning MPFR scalar at a fixed precision.
class Real {
 public:
  explicit Real(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Real(mpfr_prec_t prec, double x) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real& operator=(const Real& o) {
    if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

struct MpComplex {
  Real re, im;

  explicit MpComplex(mpfr_prec_t prec) : re(prec), im(prec) {}
  MpComplex(mpfr_prec_t prec, Complex z) : re(prec, z.real()), im(prec, z.imag()) {}

  bool is_zero() const { return mpfr_zero_p(re.get()) && mpfr_zero_p(im.get()); }
};

// Scratch registers reused across the inner loops.
struct Scratch {
  Real a, b, c;
  explicit Scratch(mpfr_prec_t prec) : a(prec), b(prec), c(prec) {}
};

void add(MpComplex& out, const MpComplex& x, const MpComplex& y) {
  mpfr_add(out.re.get(), x.re.get(), y.re.get(), MPFR_RNDN);
  mpfr_add(out.im.get(), x.im.get(), y.im.get(), MPFR_RNDN);
}

void sub(MpComplex& out, const MpComplex& x, const MpComplex& y) {
  mpfr_sub(out.re.get(), x.re.get(), y.re.get(), MPFR_RNDN);
  mpfr_sub(out.im.get(), x.im.get(), y.im.get(), MPFR_RNDN);
}

// Safe when out aliases x or y.
void mul(MpComplex& out, const MpComplex& x, const MpComplex& y, Scratch& s) {
  mpfr_mul(s.a.get(), x.re.get(), y.re.get(), MPFR_RNDN);
  mpfr_mul(s.b.get(), x.im.get(), y.im.get(), MPFR_RNDN);
  mpfr_sub(s.c.get(), s.a.get(), s.b.get(), MPFR_RNDN);
  mpfr_mul(s.a.get(), x.re.get(), y.im.get(), MPFR_RNDN);
  mpfr_mul(s.b.get(), x.im.get(), y.re.get(), MPFR_RNDN);
  mpfr_add(out.im.get(), s.a.get(), s.b.get(), MPFR_RNDN);
  mpfr_set(out.re.get(), s.c.get(), MPFR_RNDN);
}

void scale(MpComplex& z, const Real& c) {
  mpfr_mul(z.re.get(), z.re.get(), c.get(), MPFR_RNDN);
  mpfr_mul(z.im.get(), z.im.get(), c.get(), MPFR_RNDN);
}

void scale_si(MpComplex& z, long c) {
  mpfr_mul_si(z.re.get(), z.re.get(), c, MPFR_RNDN);
  mpfr_mul_si(z.im.get(), z.im.get(), c, MPFR_RNDN);
}

// out = exp(c * z).
void exp_mul(MpComplex& out, const Real& c, const MpComplex& z, Scratch& s) {
  mpfr_mul(s.a.get(), z.re.get(), c.get(), MPFR_RNDN);
  mpfr_mul(s.b.get(), z.im.get(), c.get(), MPFR_RNDN);
  mpfr_exp(s.c.get(), s.a.get(), MPFR_RNDN);
  mpfr_sin_cos(out.im.get(), out.re.get(), s.b.get(), MPFR_RNDN);
  mpfr_mul(out.re.get(), out.re.get(), s.c.get(), MPFR_RNDN);
  mpfr_mul(out.im.get(), out.im.get(), s.c.get(), MPFR_RNDN);
}

// out = x / y.
void div(MpComplex& out, const MpComplex& x, const MpComplex& y, Scratch& s, mpfr_prec_t prec) {
  Real norm(prec);
  mpfr_sqr(s.a.get(), y.re.get(), MPFR_RNDN);
  mpfr_sqr(s.b.get(), y.im.get(), MPFR_RNDN);
  mpfr_add(norm.get(), s.a.get(), s.b.get(), MPFR_RNDN);
  MpComplex conj(prec);
  mpfr_set(conj.re.get(), y.re.get(), MPFR_RNDN);
  mpfr_neg(conj.im.get(), y.im.get(), MPFR_RNDN);
  mul(out, x, conj, s);
  mpfr_div(out.re.get(), out.re.get(), norm.get(), MPFR_RNDN);
  mpfr_div(out.im.get(), out.im.get(), norm.get(), MPFR_RNDN);
}

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log2_of(mpfr_srcptr x) {
  if (mpfr_zero_p(x)) return kNegInf;
  long e = 0;
  const double m = mpfr_get_d_2exp(&e, x, MPFR_RNDN);
  return std::log2(std::abs(m)) + static_cast<double>(e);
}

// log2 |z| up to half a bit; -inf for zero.
double log2_abs(const MpComplex& z) {
  const double a = log2_of(z.re.get()), b = log2_of(z.im.get());
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b), lo = std::min(a, b);
  return hi + 0.5 * std::log2(1.0 + std::exp2(2.0 * (lo - hi)));
}

double log2_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log2(1.0 + std::exp2(lo - hi));
}

ScaledComplex to_scaled(const MpComplex& z) {
  if (z.is_zero()) return {};
  long e = std::numeric_limits<long>::min();
  if (!mpfr_zero_p(z.re.get())) e = std::max(e, static_cast<long>(mpfr_get_exp(z.re.get())));
  if (!mpfr_zero_p(z.im.get())) e = std::max(e, static_cast<long>(mpfr_get_exp(z.im.get())));
  Real t(64);
  mpfr_mul_2si(t.get(), z.re.get(), -e, MPFR_RNDN);
  const double re = mpfr_get_d(t.get(), MPFR_RNDN);
  mpfr_mul_2si(t.get(), z.im.get(), -e, MPFR_RNDN);
  const double im = mpfr_get_d(t.get(), MPFR_RNDN);
  return ScaledComplex(Complex(re, im), e);
}

double binom2(int n) { return 0.5 * n * (n - 1); }

void check_half_plane(int n, Complex beta) {
  if (n >= 2 && !(beta.real() > -2.0 / n)) {
    throw DivergenceError("outside half-plane: Re(beta) must exceed -2/" + std::to_string(n));
  }
}

// Every table entry must carry a relative error below 2^kTargetLog2Error.
constexpr double kTargetLog2Error = -60.0;
constexpr mpfr_prec_t kInitialPrecision = 128;
constexpr mpfr_prec_t kMaxPrecision = mpfr_prec_t{1} << 22;

struct MpTable {
  mpfr_prec_t prec;
  bool flat;
  Real t;
  MpComplex beta;
  std::vector<MpComplex> f;
  double worst_log2_error = kNegInf;
};

// level = N + C(N,2) beta.
MpComplex level_of(int n, const MpComplex& beta, mpfr_prec_t prec) {
  MpComplex level(prec);
  mpfr_mul_d(level.re.get(), beta.re.get(), binom2(n), MPFR_RNDN);
  mpfr_add_si(level.re.get(), level.re.get(), n, MPFR_RNDN);
  mpfr_mul_d(level.im.get(), beta.im.get(), binom2(n), MPFR_RNDN);
  return level;
}

// t given either exactly or as log q, evaluated at the working precision.
struct TArgument {
  double value;
  bool is_log_of;

  double approx() const { return is_log_of ? std::log(value) : value; }
};

// One pass at working precision `prec`, tracking a first-order forward error
// bound (as log2 of the relative error) for every F_N.
MpTable run_recurrence(int n_max, TArgument t_arg, Complex beta, mpfr_prec_t prec) {
  const double t = t_arg.approx();
  MpTable table{prec, std::abs(t) < kRecurrenceZeroT, Real(prec, t_arg.value), MpComplex(prec, beta), {}};
  if (t_arg.is_log_of) mpfr_log(table.t.get(), table.t.get(), MPFR_RNDN);
  const bool flat = table.flat;
  const double log2_eps = -static_cast<double>(prec);
  std::vector<double> log2_abs_f, log2_rel;
  table.f.reserve(n_max + 1);
  for (int n = 0; n <= std::min(n_max, 1); ++n) {
    table.f.emplace_back(prec, Complex(1.0, 0.0));
    log2_abs_f.push_back(0.0);
    log2_rel.push_back(kNegInf);
  }
  Scratch s(prec);
  Real half_t(prec), t_over_n(prec);
  mpfr_div_2ui(half_t.get(), table.t.get(), 1, MPFR_RNDN);
  MpComplex num(prec), term(prec), sum(prec), denom(prec), arg(prec);
  MpComplex e(prec), e_inv(prec), ratio(prec), ratio_inv(prec), step(prec);
  for (int n = 2; n <= n_max; ++n) {
    const MpComplex level = level_of(n, table.beta, prec);
    const double log2_level = std::log2(std::abs(static_cast<double>(n) + binom2(n) * beta) + 1.0);
    // Relative error of the exponentials from rounding their arguments.
    const double log2_arg_error = log2_eps + std::log2(std::abs(t) + 1.0) + log2_level + 1.0;
    double log2_rel_denom = log2_eps;
    mpfr_sub_ui(arg.re.get(), level.re.get(), 1, MPFR_RNDN);
    mpfr_set(arg.im.get(), level.im.get(), MPFR_RNDN);
    if (flat) {
      denom = arg;
      if (denom.is_zero()) throw RecurrencePoleError("recurrence pole at N=" + std::to_string(n));
      // num_k = level + 1 + k * step, step = -2 level / N
      step = level;
      mpfr_mul_si(step.re.get(), step.re.get(), -2, MPFR_RNDN);
      mpfr_mul_si(step.im.get(), step.im.get(), -2, MPFR_RNDN);
      mpfr_div_si(step.re.get(), step.re.get(), n, MPFR_RNDN);
      mpfr_div_si(step.im.get(), step.im.get(), n, MPFR_RNDN);
      num = level;
      mpfr_add_ui(num.re.get(), num.re.get(), 1, MPFR_RNDN);
    } else {
      // 2 sinh((t/2)(level - 1)) = exp(+) - exp(-)
      Real neg_half_t(prec);
      mpfr_neg(neg_half_t.get(), half_t.get(), MPFR_RNDN);
      exp_mul(e, half_t, arg, s);
      exp_mul(e_inv, neg_half_t, arg, s);
      sub(denom, e, e_inv);
      const double log2_mag = log2_add(log2_abs(e), log2_abs(e_inv));
      const double log2_denom = log2_abs(denom);
      if (denom.is_zero() || log2_denom < log2_mag + log2_eps + 8.0) {
        throw RecurrencePoleError("recurrence pole at N=" + std::to_string(n));
      }
      log2_rel_denom = log2_mag - log2_denom + log2_add(log2_eps + 2.0, log2_arg_error);
      // exp(+-(t/2)(level (1 - 2k/N) + 1)) as geometric progressions in k.
      MpComplex shifted = level;
      mpfr_add_ui(shifted.re.get(), shifted.re.get(), 1, MPFR_RNDN);
      exp_mul(e, half_t, shifted, s);
      exp_mul(e_inv, neg_half_t, shifted, s);
      mpfr_div_si(t_over_n.get(), table.t.get(), n, MPFR_RNDN);
      exp_mul(ratio_inv, t_over_n, level, s);
      mpfr_neg(t_over_n.get(), t_over_n.get(), MPFR_RNDN);
      exp_mul(ratio, t_over_n, level, s);
    }

    mpfr_set_zero(sum.re.get(), 1);
    mpfr_set_zero(sum.im.get(), 1);
    double log2_err = kNegInf;
    for (int k = 1; k < n; ++k) {
      double log2_mag_num;
      if (flat) {
        add(num, num, step);
        log2_mag_num = log2_add(log2_abs(num), log2_level + 2.0);
      } else {
        mul(e, e, ratio, s);
        mul(e_inv, e_inv, ratio_inv, s);
        sub(num, e, e_inv);
        log2_mag_num = log2_add(log2_abs(e), log2_abs(e_inv));
      }
      mul(term, num, table.f[n - k], s);
      mul(term, term, table.f[k], s);
      scale_si(term, k);
      add(sum, sum, term);
      double log2_rel_term = log2_add(log2_rel[n - k], log2_rel[k]);
      log2_rel_term = log2_add(log2_rel_term, log2_eps + std::log2(static_cast<double>(k + 8)));
      if (!flat) log2_rel_term = log2_add(log2_rel_term, log2_arg_error + std::log2(static_cast<double>(k + 1)));
      log2_err = log2_add(log2_err, std::log2(static_cast<double>(k)) + log2_mag_num + log2_abs_f[n - k] +
                                        log2_abs_f[k] + log2_rel_term);
    }
    // F_N = sum / (N * denom): with denom = 2 sinh(...) the factor 1/2 of each
    // numerator sinh cancels.
    MpComplex value(prec);
    div(value, sum, denom, s, prec);
    mpfr_div_si(value.re.get(), value.re.get(), n, MPFR_RNDN);
    mpfr_div_si(value.im.get(), value.im.get(), n, MPFR_RNDN);
    double rel = sum.is_zero() ? std::numeric_limits<double>::infinity() : log2_err - log2_abs(sum);
    rel = log2_add(log2_add(rel, log2_rel_denom), log2_eps + 3.0);
    table.worst_log2_error = std::max(table.worst_log2_error, rel);
    log2_abs_f.push_back(log2_abs(value));
    log2_rel.push_back(rel);
    table.f.push_back(std::move(value));
  }
  return table;
}

// Gaussian rationals for the t = 0 recurrence, which is rational in beta.
struct ExactComplex {
  mpq_class re, im;
};

ExactComplex times(const ExactComplex& x, const ExactComplex& y) {
  return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}

// Exact table at t = 0; beta is a dyadic rational in each component. The
// only rounding is the final conversion to the working precision.
MpTable run_flat_exact(int n_max, TArgument t_arg, Complex beta) {
  const mpfr_prec_t prec = kInitialPrecision;
  MpTable table{prec, true, Real(prec, t_arg.value), MpComplex(prec, beta), {}};
  if (t_arg.is_log_of) mpfr_log(table.t.get(), table.t.get(), MPFR_RNDN);
  const ExactComplex b{mpq_class(beta.real()), mpq_class(beta.imag())};
  std::vector<ExactComplex> f{{1, 0}, {1, 0}};
  for (int n = 2; n <= n_max; ++n) {
    const mpq_class c2(n * (n - 1), 2);
    const ExactComplex level{n + c2 * b.re, c2 * b.im};
    const ExactComplex denom{level.re - 1, level.im};
    if (denom.re == 0 && denom.im == 0) throw RecurrencePoleError("recurrence pole at N=" + std::to_string(n));
    ExactComplex sum{0, 0};
    for (int k = 1; k < n; ++k) {
      const mpq_class shrink(n - 2 * k, n);
      const ExactComplex num{k * (level.re * shrink + 1), k * level.im * shrink};
      const ExactComplex term = times(times(num, f[n - k]), f[k]);
      sum.re += term.re;
      sum.im += term.im;
    }
    const mpq_class norm = n * (denom.re * denom.re + denom.im * denom.im);
    ExactComplex value{(sum.re * denom.re + sum.im * denom.im) / norm, (sum.im * denom.re - sum.re * denom.im) / norm};
    value.re.canonicalize();
    value.im.canonicalize();
    f.push_back(std::move(value));
  }
  f.resize(n_max + 1);
  for (const ExactComplex& z : f) {
    MpComplex entry(prec);
    mpfr_set_q(entry.re.get(), z.re.get_mpq_t(), MPFR_RNDN);
    mpfr_set_q(entry.im.get(), z.im.get_mpq_t(), MPFR_RNDN);
    table.f.push_back(std::move(entry));
  }
  table.worst_log2_error = -static_cast<double>(prec);
  return table;
}

// Exact values are cheap only for short denominators; only such beta can be
// exact zeros of the t = 0 table in practice.
bool short_dyadic(double x) { return std::ldexp(x, 16) == std::trunc(std::ldexp(x, 16)); }

MpTable compute_table(int n_max, TArgument t, Complex beta) {
  if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");
  if (!std::isfinite(t.approx())) throw std::invalid_argument("t must be finite");
  if (!std::isfinite(beta.real()) || !std::isfinite(beta.imag())) {
    throw std::invalid_argument("beta must be finite");
  }
  check_half_plane(n_max, beta);
  if (std::abs(t.approx()) < kRecurrenceZeroT && short_dyadic(beta.real()) && short_dyadic(beta.imag())) {
    return run_flat_exact(n_max, t, beta);
  }
  mpfr_prec_t prec = kInitialPrecision;
  while (true) {
    MpTable table = run_recurrence(n_max, t, beta, prec);
    if (table.worst_log2_error <= kTargetLog2Error) return table;
    const double deficit = table.worst_log2_error - kTargetLog2Error;
    if (!std::isfinite(deficit) || prec >= kMaxPrecision) {
      throw std::runtime_error("recurrence could not reach double accuracy at N=" + std::to_string(n_max));
    }
    prec = std::min(kMaxPrecision, std::max(2 * prec, prec + static_cast<mpfr_prec_t>(std::ceil(deficit)) + 64));
  }
}

void check_q(double q) {
  if (!(q > 0.0) || !std::isfinite(q)) throw std::invalid_argument("q must be positive and finite");
}

void check_n(int n) {
  if (n < 0) throw std::invalid_argument("particle count must be non-negative");
}

void multiply_factorial(MpComplex& z, int n, mpfr_prec_t prec) {
  Real fact(prec);
  mpfr_fac_ui(fact.get(), static_cast<unsigned long>(n), MPFR_RNDN);
  scale(z, fact);
}

// N! sum_k cosh((t/2) level (1 - 2k/N)) F_{N-k} F_k / (2 cosh(t/2))^N.
ScaledComplex proj_value(const MpTable& table, int n) {
  const mpfr_prec_t prec = table.prec;
  Scratch s(prec);
  const MpComplex level = level_of(n, table.beta, prec);
  MpComplex sum(prec), term(prec), weight(prec), e(prec), e_inv(prec), ratio(prec), ratio_inv(prec);
  Real half_t(prec), t_over_n(prec);
  mpfr_div_2ui(half_t.get(), table.t.get(), 1, MPFR_RNDN);
  if (!table.flat) {
    Real neg_half_t(prec);
    mpfr_neg(neg_half_t.get(), half_t.get(), MPFR_RNDN);
    exp_mul(e, half_t, level, s);
    exp_mul(e_inv, neg_half_t, level, s);
    mpfr_div_si(t_over_n.get(), table.t.get(), n, MPFR_RNDN);
    exp_mul(ratio_inv, t_over_n, level, s);
    mpfr_neg(t_over_n.get(), t_over_n.get(), MPFR_RNDN);
    exp_mul(ratio, t_over_n, level, s);
  }
  for (int k = 0; k <= n; ++k) {
    if (table.flat) {
      weight = MpComplex(prec, Complex(2.0, 0.0));
    } else {
      if (k > 0) {
        mul(e, e, ratio, s);
        mul(e_inv, e_inv, ratio_inv, s);
      }
      add(weight, e, e_inv);
    }
    mul(term, weight, table.f[n - k], s);
    mul(term, term, table.f[k], s);
    add(sum, sum, term);
  }
  // Each weight is 2 cosh; divide by 2 (2 cosh(t/2))^N = 2 (e^{t/2} + e^{-t/2})^N.
  Real base(prec), power(prec);
  if (table.flat) {
    mpfr_set_ui(base.get(), 2, MPFR_RNDN);
  } else {
    mpfr_exp(base.get(), half_t.get(), MPFR_RNDN);
    mpfr_ui_div(power.get(), 1, base.get(), MPFR_RNDN);
    mpfr_add(base.get(), base.get(), power.get(), MPFR_RNDN);
  }
  mpfr_pow_ui(power.get(), base.get(), static_cast<unsigned long>(n), MPFR_RNDN);
  mpfr_mul_2ui(power.get(), power.get(), 1, MPFR_RNDN);
  mpfr_div(sum.re.get(), sum.re.get(), power.get(), MPFR_RNDN);
  mpfr_div(sum.im.get(), sum.im.get(), power.get(), MPFR_RNDN);
  multiply_factorial(sum, n, prec);
  return to_scaled(sum);
}

// N! q^{C(N,2) beta / 2} F_N, with q^{...} = exp(t C(N,2) beta / 2).
ScaledComplex r_value(const MpTable& table, int n) {
  const mpfr_prec_t prec = table.prec;
  Scratch s(prec);
  MpComplex z = table.f[n];
  if (!table.flat) {
    MpComplex exponent = table.beta;
    Real c(prec);
    mpfr_mul_d(c.get(), table.t.get(), 0.5 * binom2(n), MPFR_RNDN);
    MpComplex factor(prec);
    exp_mul(factor, c, exponent, s);
    mul(z, z, factor, s);
  }
  multiply_factorial(z, n, prec);
  return to_scaled(z);
}

}  // namespace

RecurrenceTable f_table(int n_max, double t, Complex beta) {
  const MpTable table = compute_table(n_max, {t, false}, beta);
  std::vector<ScaledComplex> values;
  values.reserve(table.f.size());
  for (const MpComplex& z : table.f) values.push_back(to_scaled(z));
  return RecurrenceTable(t, beta, std::move(values), static_cast<long>(table.prec));
}

ScaledComplex z_R_fast_scaled(int n, double q, Complex beta) {
  check_q(q);
  check_n(n);
  if (n <= 1) return ScaledComplex(1.0);
  return r_value(compute_table(n, {q, true}, beta), n);
}

Complex z_R_fast(int n, double q, Complex beta) { return z_R_fast_scaled(n, q, beta).value(); }

ScaledComplex z_proj_fast_scaled(int n, double q, Complex beta) {
  check_q(q);
  check_n(n);
  if (n <= 1) return ScaledComplex(1.0);
  return proj_value(compute_table(n, {q, true}, beta), n);
}

Complex z_proj_fast(int n, double q, Complex beta) { return z_proj_fast_scaled(n, q, beta).value(); }

ScaledComplex q_to_1_limit_scaled(int n, Complex beta, const SpaceSpec& space) {
  check_n(n);
  const bool projective = space.kind == SpaceSpec::Kind::projective;
  if (!projective && !(space.kind == SpaceSpec::Kind::ball && space.v == 0)) {
    throw std::invalid_argument("q -> 1 limits are provided for R and proj");
  }
  if (n <= 1) return ScaledComplex(1.0);
  const MpTable table = compute_table(n, {0.0, false}, beta);
  return projective ? proj_value(table, n) : r_value(table, n);
}

Complex q_to_1_limit(int n, Complex beta, const SpaceSpec& space) {
  return q_to_1_limit_scaled(n, beta, space).value();
}

RecurrenceRows recurrence_rows(int n_max, double q, Complex beta, const SpaceSpec& space, bool q_to_1) {
  check_n(n_max);
  const bool projective = space.kind == SpaceSpec::Kind::projective;
  if (!projective && !(space.kind == SpaceSpec::Kind::ball && space.v == 0)) {
    throw std::invalid_argument("the recurrence covers R and proj");
  }
  if (!q_to_1) check_q(q);
  const TArgument t = q_to_1 ? TArgument{0.0, false} : TArgument{q, true};
  const MpTable table = compute_table(n_max, t, beta);
  RecurrenceRows rows;
  rows.t = t.approx();
  rows.working_bits = static_cast<long>(table.prec);
  for (int n = 0; n <= n_max; ++n) {
    rows.f.push_back(to_scaled(table.f[n]));
    if (n <= 1) {
      rows.z.push_back(ScaledComplex(1.0));
    } else {
      rows.z.push_back(projective ? proj_value(table, n) : r_value(table, n));
    }
  }
  return rows;
}

}  // namespace ultragas
