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

#include <gtest/gtest.h>

#include <functional>
#include <vector>

#include "ultragas/engine.hpp"
#include "ultragas/grand.hpp"

namespace ultragas {
namespace {

Rational factorial(int n) {
  Rational r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Sum over compositions N_0 + ... + N_{parts-1} = n of prod term(N_k).
Rational composition_sum(int n, int parts, const std::function<Rational(int)>& term) {
  if (parts == 0) return n == 0 ? Rational(1) : Rational(0);
  Rational total = 0;
  for (int k = 0; k <= n; ++k) total += term(k) * composition_sum(n - k, parts - 1, term);
  return total;
}

TEST(Series, MultiplyAndPower) {
  const Coefficients a{ScalarValue(Rational(1)), ScalarValue(Rational(1)), ScalarValue(Rational(0)),
                       ScalarValue(Rational(0))};
  // (1 + x)^3 = 1 + 3x + 3x^2 + x^3
  const Coefficients cube = series_pow(a, 3, 3);
  ASSERT_EQ(cube.size(), 4u);
  EXPECT_EQ(cube[1].exact(), Rational(3));
  EXPECT_EQ(cube[2].exact(), Rational(3));
  EXPECT_EQ(cube[3].exact(), Rational(1));
  const Coefficients sq = series_mul(a, a);
  EXPECT_EQ(sq[2].exact(), Rational(1));
  EXPECT_EQ(sq[3].exact(), Rational(0));
}

TEST(Series, ExponentialPowers) {
  // exp(x)^m = exp(m x)
  Coefficients e;
  for (int n = 0; n <= 6; ++n) e.emplace_back(Rational(1) / factorial(n));
  const Coefficients e5 = series_pow(e, 5, 6);
  Rational p = 1;
  for (int n = 0; n <= 6; ++n) {
    EXPECT_EQ(e5[n].exact(), p / factorial(n));
    p *= 5;
  }
}

TEST(Series, FugacityScaling) {
  const Coefficients a{ScalarValue(Rational(1)), ScalarValue(Rational(2)), ScalarValue(Rational(3))};
  const Coefficients b = series_scale_fugacity(a, ScalarValue(Rational(1, 2)));
  EXPECT_EQ(b[1].exact(), Rational(1));
  EXPECT_EQ(b[2].exact(), Rational(3, 4));
}

TEST(Series, PowerNeedsUnitConstant) {
  const Coefficients a{ScalarValue(Rational(2)), ScalarValue(Rational(1))};
  EXPECT_THROW(series_pow(a, 2, 1), std::invalid_argument);
  const Coefficients b{ScalarValue(Rational(1))};
  EXPECT_THROW(series_mul(a, b), std::invalid_argument);
}

TEST(Series, ExpectedParticles) {
  // Z = exp(f): mean particle number f.
  Coefficients e;
  for (int n = 0; n <= 30; ++n) e.emplace_back(Complex(1.0 / factorial(n).get_d()));
  EXPECT_NEAR(expected_particles(e, 0.7), 0.7, 1e-12);
}

TEST(Grand, EgfCoefficientsAreScaledPartitionFunctions) {
  const EgfSeries r = egf(SpaceSpec::R(), 2, 1, 4, Mode::exact);
  for (int n = 0; n <= 4; ++n) {
    const Rational z = n == 0 ? Rational(1) : z_R(ExponentSpec::uniform(n, Rational(1)), Field::exact(2)).exact();
    EXPECT_EQ(r.coefficients[n].exact(), z / factorial(n));
  }
}

TEST(Grand, ProjectiveCompositionSum) {
  const long q = 3;
  for (int beta : {1, 2}) {
    for (int n = 1; n <= 5; ++n) {
      const auto term = [&](int k) {
        if (k == 0) return Rational(1);
        const Rational zp = z_P(ExponentSpec::uniform(k, Rational(beta)), Field::exact(q)).exact();
        Rational w = 1;
        for (int i = 0; i < k; ++i) w *= Rational(q, q + 1);
        return Rational(w * zp / factorial(k));
      };
      const Rational lhs = z_proj(ExponentSpec::uniform(n, Rational(beta)), Field::exact(q)).exact() / factorial(n);
      EXPECT_EQ(lhs, composition_sum(n, q + 1, term)) << beta << " " << n;
    }
  }
}

TEST(Grand, BallCompositionSum) {
  for (long q : {2, 3}) {
    for (int n = 1; n <= 5; ++n) {
      const auto term = [&](int k) {
        if (k == 0) return Rational(1);
        return Rational(z_P(ExponentSpec::uniform(k, Rational(1)), Field::exact(q)).exact() / factorial(k));
      };
      const Rational lhs = z_R(ExponentSpec::uniform(n, Rational(1)), Field::exact(q)).exact() / factorial(n);
      EXPECT_EQ(lhs, composition_sum(n, static_cast<int>(q), term)) << q << " " << n;
    }
  }
}

TEST(Grand, LawsHoldExactly) {
  for (const LawReport& report : verify_all(2, 1, 6, Mode::exact)) {
    EXPECT_TRUE(report.passed()) << report.law;
    EXPECT_EQ(report.rows.size(), 7u);
  }
}

TEST(Grand, LawsHoldInFloatForFractionalBeta) {
  for (const LawReport& report : verify_all(3, Rational(1, 2), 10, Mode::floating)) {
    EXPECT_TRUE(report.passed()) << report.law;
  }
}

TEST(Grand, NonPositiveBetaNeedsExtendedFlag) {
  EXPECT_THROW(verify_power_law_q(2, Rational(-1, 10), 4, Mode::floating), std::invalid_argument);
  VerifyOptions options;
  options.extended = true;
  const LawReport report = verify_power_law_q(2, Rational(-1, 10), 4, Mode::floating, options);
  EXPECT_TRUE(report.extended);
}

TEST(Grand, ExactModeNeedsIntegerBeta) {
  EXPECT_THROW(verify_power_law_q(2, Rational(1, 2), 3, Mode::exact), std::invalid_argument);
}

TEST(Grand, RPCoefficientMatchesProjective) {
  const EgfSeries r = egf(SpaceSpec::R(), 2, 2, 5, Mode::exact);
  const EgfSeries p = egf(SpaceSpec::P(), 2, 2, 5, Mode::exact);
  const EgfSeries proj = egf(SpaceSpec::projective(), 2, 2, 5, Mode::exact);
  for (int n = 0; n <= 5; ++n) {
    EXPECT_EQ(rp_coefficient(r.coefficients, p.coefficients, ScalarValue(Rational(2, 3)), n).exact(),
              proj.coefficients[n].exact());
  }
}

}  // namespace
}  // namespace ultragas
