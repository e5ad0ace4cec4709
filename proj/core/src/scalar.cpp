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

#include "ultragas/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace ultragas {

std::string to_string(ScalarKind kind) {
  switch (kind) {
    case ScalarKind::exact: return "exact";
    case ScalarKind::symbolic: return "symbolic";
    case ScalarKind::complex: return "complex";
  }
  return "unknown";
}

namespace {

[[noreturn]] void mixed(const ScalarValue& a, const ScalarValue& b) {
  throw MixedModeError("mixed-mode arithmetic between " + to_string(a.kind()) + " and " +
                       to_string(b.kind()) + " scalars");
}

}  // namespace

const Rational& ScalarValue::exact() const {
  if (!is_exact()) throw MixedModeError("scalar is " + ultragas::to_string(kind()) + ", not exact");
  return std::get<Rational>(value_);
}

const BiRational& ScalarValue::symbolic() const {
  if (!is_symbolic()) throw MixedModeError("scalar is " + ultragas::to_string(kind()) + ", not symbolic");
  return std::get<BiRational>(value_);
}

Complex ScalarValue::complex() const {
  if (!is_complex()) throw MixedModeError("scalar is " + ultragas::to_string(kind()) + ", not complex");
  return std::get<Complex>(value_);
}

Complex ScalarValue::to_complex() const {
  if (is_exact()) return {exact().get_d(), 0.0};
  return complex();
}

ScalarValue ScalarValue::one_like(const ScalarValue& like) {
  switch (like.kind()) {
    case ScalarKind::exact: return Rational(1);
    case ScalarKind::symbolic: return BiRational(mpz_class(1));
    case ScalarKind::complex: return Complex(1.0, 0.0);
  }
  return Rational(1);
}

ScalarValue ScalarValue::zero_like(const ScalarValue& like) {
  switch (like.kind()) {
    case ScalarKind::exact: return Rational(0);
    case ScalarKind::symbolic: return BiRational();
    case ScalarKind::complex: return Complex(0.0, 0.0);
  }
  return Rational(0);
}

#define ULTRAGAS_SCALAR_OP(op)                                               \
  ScalarValue& ScalarValue::operator op(const ScalarValue& o) {            \
    if (kind() != o.kind()) mixed(*this, o);                               \
    std::visit(                                                            \
        [&](auto& lhs) {                                                   \
          using T = std::decay_t<decltype(lhs)>;                           \
          lhs op std::get<T>(o.value_);                                    \
        },                                                                 \
        value_);                                                           \
    return *this;                                                          \
  }

ULTRAGAS_SCALAR_OP(+=)
ULTRAGAS_SCALAR_OP(-=)
ULTRAGAS_SCALAR_OP(*=)
#undef ULTRAGAS_SCALAR_OP

ScalarValue& ScalarValue::operator/=(const ScalarValue& o) {
  if (kind() != o.kind()) mixed(*this, o);
  if (o.is_exact() && o.exact() == 0) throw DivergenceError("division by zero");
  if (o.is_complex() && o.complex() == Complex(0.0, 0.0)) throw DivergenceError("division by zero");
  std::visit(
      [&](auto& lhs) {
        using T = std::decay_t<decltype(lhs)>;
        lhs /= std::get<T>(o.value_);
      },
      value_);
  return *this;
}

ScalarValue ScalarValue::operator-() const {
  switch (kind()) {
    case ScalarKind::exact: return Rational(-exact());
    case ScalarKind::symbolic: return -symbolic();
    case ScalarKind::complex: return -complex();
  }
  return *this;
}

bool operator==(const ScalarValue& a, const ScalarValue& b) {
  if (a.kind() != b.kind()) return false;
  return std::visit(
      [&](const auto& lhs) {
        using T = std::decay_t<decltype(lhs)>;
        return lhs == std::get<T>(b.value_);
      },
      a.value_);
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string ScalarValue::to_string() const {
  switch (kind()) {
    case ScalarKind::exact: return exact().get_str();
    case ScalarKind::symbolic: return symbolic().to_string();
    case ScalarKind::complex: {
      const Complex c = complex();
      if (c.imag() == 0.0) return format_double(c.real());
      return "[" + format_double(c.real()) + ", " + format_double(c.imag()) + "]";
    }
  }
  return {};
}

double relative_difference(Complex a, Complex b) {
  const double scale = std::max({std::abs(a), std::abs(b), std::numeric_limits<double>::min()});
  return std::abs(a - b) / scale;
}

bool approx_equal(const ScalarValue& a, const ScalarValue& b, double rel) {
  if (a.is_symbolic() || b.is_symbolic() || (a.is_exact() && b.is_exact())) return a == b;
  return relative_difference(a.to_complex(), b.to_complex()) <= rel;
}

}  // namespace ultragas
