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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "ultragas/engine.hpp"

namespace ultragas {
namespace {

Rational qpow(const Rational& q, long e) {
  Rational r = 1;
  for (long i = 0; i < std::labs(e); ++i) r *= q;
  return e < 0 ? Rational(1 / r) : r;
}

// Two points in R: |x - y| = q^{-v} with probability (1 - 1/q) q^{-v}.
Rational two_point_R(const Rational& q, long s) {
  return (q - 1) / (q - qpow(q, -s));
}

Rational example_three_charges(long p, long beta) {
  const Rational P(p);
  const Rational bracket = 1 / (qpow(P, 1 + 2 * beta) - 1) + 1 / (qpow(P, 1 + 3 * beta) - 1) +
                           1 / (qpow(P, 1 + 6 * beta) - 1);
  return qpow(P, 11 * beta) / (qpow(P, 2 + 11 * beta) - 1) * ((P - 1) * (P - 2) + (P - 1) * (P - 1) * bracket);
}

TEST(Engine, TwoPointClosedForm) {
  for (long q : {2, 3, 5}) {
    for (long s : {1, 2, 3}) {
      const auto spec = ExponentSpec::uniform(2, Rational(s));
      EXPECT_EQ(z_R(spec, Field::exact(q)).exact(), two_point_R(q, s));
    }
  }
  EXPECT_EQ(z_R(ExponentSpec::uniform(2, Rational(1)), Field::exact(2)).exact(), Rational(2, 3));
}

TEST(Engine, ThreeChargeExample) {
  for (long p : {2, 3, 5, 7}) {
    for (long beta : {1, 2}) {
      const auto spec = ExponentSpec::from_charges({1, 2, 3}, Rational(beta));
      EXPECT_EQ(z_R(spec, Field::exact(p)).exact(), example_three_charges(p, beta)) << p << " " << beta;
    }
  }
}

TEST(Engine, ProjectiveTwoPoint) {
  // Different parts with probability q/(q+1); otherwise an R-distance scaled by 1/q.
  for (long q : {2, 3, 4}) {
    for (long s : {1, 2}) {
      const Rational Q(q);
      const Rational expected = Q / (Q + 1) + 1 / (Q + 1) * qpow(Q, -s) * two_point_R(Q, s);
      const auto spec = ExponentSpec::uniform(2, Rational(s));
      EXPECT_EQ(z_proj(spec, Field::exact(Q)).exact(), expected);
    }
  }
  EXPECT_EQ(z_proj(ExponentSpec::uniform(2, Rational(1)), Field::exact(2)).exact(), Rational(7, 9));
}

TEST(Engine, BallScaling) {
  const auto spec = ExponentSpec::from_charges({1, 2, 1, 3}, Rational(1));
  const Rational q = 3;
  const Rational zr = z_R(spec, Field::exact(q)).exact();
  // Measure scales by q^{-vN} and each distance by q^{-v}.
  const Rational e = spec.pair_sum_exact(IndexSet::range(4).mask()) + 4;
  ASSERT_EQ(e.get_den(), 1);
  const long shift = e.get_num().get_si();
  for (int v : {1, 2}) {
    EXPECT_EQ(z_ball(IndexSet::range(4), v, spec, Field::exact(q)).exact(), zr * qpow(q, -v * shift)) << v;
  }
  EXPECT_EQ(z_P(spec, Field::exact(q)).exact(), zr * qpow(q, -shift));
}

TEST(Engine, ZeroExponentsGiveOne) {
  for (int n = 1; n <= 5; ++n) {
    const auto spec = ExponentSpec::zero(n);
    EXPECT_EQ(z_R(spec, Field::exact(3)).exact(), Rational(1));
    EXPECT_EQ(z_proj(spec, Field::exact(3)).exact(), Rational(1));
    EXPECT_EQ(z_proj_cells(spec, Field::exact(3)).exact(), Rational(1));
  }
}

TEST(Engine, PermutationInvariance) {
  const auto spec = ExponentSpec::from_charges({1, 2, 3, 5}, Rational(1));
  const Rational base = z_R(spec, Field::exact(2)).exact();
  const Rational base_proj = z_proj(spec, Field::exact(2)).exact();
  std::vector<int> perm{1, 2, 3, 4};
  while (std::next_permutation(perm.begin(), perm.end())) {
    const auto p = spec.permuted(perm);
    EXPECT_EQ(z_R(p, Field::exact(2)).exact(), base);
    EXPECT_EQ(z_proj(p, Field::exact(2)).exact(), base_proj);
  }
}

TEST(Engine, ChainsAgreeWithCosetOracle) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(0, 4);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<Rational> entries(6);
    for (auto& e : entries) e = Rational(entry(rng));
    const auto spec = ExponentSpec::direct(4, entries);
    for (long q : {2, 3}) {
      const Field f = Field::exact(q);
      EXPECT_EQ(z_R(spec, f).exact(), z_coset_oracle(IndexSet::range(4), spec, f, SpaceSpec::R()).exact());
      EXPECT_EQ(z_P(spec, f).exact(), z_coset_oracle(IndexSet::range(4), spec, f, SpaceSpec::P()).exact());
      EXPECT_EQ(z_proj(spec, f).exact(), z_proj_cells(spec, f).exact());
    }
  }
}

TEST(Engine, PathEquivalenceRandomCharges) {
  std::mt19937 rng(2026);
  std::uniform_int_distribution<int> charge(1, 3);
  for (int n = 2; n <= 6; ++n) {
    std::vector<Rational> charges(n);
    for (auto& c : charges) c = charge(rng);
    for (long q : {2, 3, 4}) {
      for (long beta : {1, 2, 3}) {
        const auto spec = ExponentSpec::from_charges(charges, Rational(beta));
        const Field f = Field::exact(q);
        EXPECT_EQ(z_R(spec, f), z_coset_oracle(IndexSet::range(n), spec, f, SpaceSpec::R())) << n << " " << q;
        EXPECT_EQ(z_P(spec, f), z_coset_oracle(IndexSet::range(n), spec, f, SpaceSpec::P())) << n << " " << q;
        EXPECT_EQ(z_proj(spec, f), z_proj_cells(spec, f)) << n << " " << q;
      }
    }
  }
}

TEST(Engine, RemovableSingularity) {
  const auto spec = ExponentSpec::uniform(3, Rational(1));
  const ScalarValue chains = z_proj(spec, Field::exact(2));
  EXPECT_EQ(chains.exact(), z_proj_cells(spec, Field::exact(2)).exact());
  const ScalarValue near = z_proj(spec, Field::floating(2.0 + 1e-7));
  EXPECT_NEAR(near.complex().real(), chains.exact().get_d(), 1e-6);
}

TEST(Engine, SymbolicSubstitution) {
  const auto spec = ExponentSpec::from_charges({1, 2, 3}, Rational(1));
  const ScalarValue sym = z_R(spec, Field::symbolic());
  ASSERT_TRUE(sym.is_symbolic());
  for (long q : {2, 3, 5}) {
    for (long beta : {1, 2}) {
      EXPECT_EQ(sym.symbolic().evaluate(mpq_class(q), qpow(q, beta)), example_three_charges(q, beta));
    }
  }
  const ScalarValue proj = z_proj(ExponentSpec::uniform(3, Rational(1)), Field::symbolic());
  EXPECT_EQ(proj.symbolic().evaluate(mpq_class(3), mpq_class(3)),
            z_proj(ExponentSpec::uniform(3, Rational(1)), Field::exact(3)).exact());
}

TEST(Engine, FloatMatchesExact) {
  const auto spec = ExponentSpec::from_charges({1, 2, 3}, Rational(1, 2));
  const double exact = z_R(ExponentSpec::from_charges({1, 2, 3}, Rational(1)), Field::exact(5)).exact().get_d();
  const double flt = z_R(ExponentSpec::from_charges({1, 2, 3}, Complex(1.0)), Field::floating(5.0)).complex().real();
  EXPECT_NEAR(flt, exact, 1e-14 * exact);
  const double half = z_R(spec, Field::floating(5.0)).complex().real();
  const double p = 5.0, b = 0.5;
  const double expected = std::pow(p, 11 * b) / (std::pow(p, 2 + 11 * b) - 1) *
                          ((p - 1) * (p - 2) + (p - 1) * (p - 1) *
                                                   (1 / (std::pow(p, 1 + 2 * b) - 1) + 1 / (std::pow(p, 1 + 3 * b) - 1) +
                                                    1 / (std::pow(p, 1 + 6 * b) - 1)));
  EXPECT_NEAR(half, expected, 1e-12 * expected);
}

TEST(Engine, ComplexBeta) {
  const Complex beta(1.0, 0.5);
  const double q = 3.0;
  const Complex z = z_R(ExponentSpec::uniform(2, beta), Field::floating(q)).complex();
  const Complex expected = (q - 1) / (q - std::pow(Complex(q), -beta));
  EXPECT_LT(std::abs(z - expected), 1e-14);
}

TEST(Engine, OutsideDomainThrows) {
  EXPECT_THROW(z_R(ExponentSpec::uniform(3, Rational(-1)), Field::exact(2)), DivergenceError);
  EXPECT_THROW(z_proj(ExponentSpec::uniform(3, Rational(-2, 3)), Field::exact(2)), DivergenceError);
  try {
    z_R(ExponentSpec::uniform(2, Rational(-1)), Field::exact(2));
    FAIL();
  } catch (const DivergenceError& e) {
    EXPECT_NE(std::string(e.what()).find("{1,2}"), std::string::npos);
  }
}

TEST(Engine, BadFieldRejected) {
  EXPECT_THROW(z_R(ExponentSpec::uniform(2, Rational(1)), Field::exact(0)), std::invalid_argument);
  EXPECT_THROW(z_proj_cells(ExponentSpec::uniform(2, Rational(1)), Field::exact(Rational(5, 2))),
               std::invalid_argument);
}

TEST(Engine, PositiveBetaBounds) {
  for (int n = 2; n <= 5; ++n) {
    for (long q : {2, 3}) {
      const auto spec = ExponentSpec::uniform(n, Rational(1));
      for (const ScalarValue& z : {z_R(spec, Field::exact(q)), z_P(spec, Field::exact(q)), z_proj(spec, Field::exact(q))}) {
        EXPECT_GT(z.exact(), 0);
        EXPECT_LE(z.exact(), 1);
      }
    }
  }
}

TEST(Engine, FreeEnergyIsMinusLogZ) {
  const std::vector<Rational> charges{1, 1, 2};
  const Observables obs = observables(SpaceSpec::R(), charges, 1.0, 2.0);
  const double z = z_R(ExponentSpec::from_charges(charges, Rational(1)), Field::exact(2)).exact().get_d();
  EXPECT_NEAR(obs.free_energy, -std::log(z), 1e-14);
  // Mean energy is the beta derivative of the free energy.
  const double h = 1e-4;
  const double fp = observables(SpaceSpec::R(), charges, 1.0 + h, 2.0).free_energy;
  const double fm = observables(SpaceSpec::R(), charges, 1.0 - h, 2.0).free_energy;
  EXPECT_NEAR(obs.mean_energy, (fp - fm) / (2 * h), 1e-7);
  EXPECT_GT(obs.fluctuation, 0.0);
}

TEST(Engine, TwoPointMeanEnergyAnalytic) {
  const double q = 2.0;
  for (double beta : {0.5, 1.0, 2.0}) {
    const Observables obs = observables(SpaceSpec::R(), {1, 1}, beta, q);
    const double u = std::pow(q, -beta);
    EXPECT_NEAR(obs.mean_energy, u * std::log(q) / (q - u), 1e-8);
    // Second differences at step 1e-5 amplify rounding by about 1e10.
    EXPECT_NEAR(obs.fluctuation, q * u * std::log(q) * std::log(q) / ((q - u) * (q - u)), 1e-4);
  }
}

TEST(Engine, SingleParticleHasNoEnergy) {
  const Observables obs = observables(SpaceSpec::projective(), {1}, 1.0, 3.0);
  EXPECT_EQ(obs.free_energy, 0.0);
  EXPECT_NEAR(obs.mean_energy, 0.0, 1e-12);
  EXPECT_NEAR(obs.fluctuation, 0.0, 1e-8);
}

TEST(Engine, SpaceParsing) {
  EXPECT_EQ(SpaceSpec::parse("R").name(), "R");
  EXPECT_EQ(SpaceSpec::parse("P").name(), "P");
  EXPECT_EQ(SpaceSpec::parse("proj").name(), "proj");
  EXPECT_EQ(SpaceSpec::parse("ball:3").v, 3);
  EXPECT_THROW(SpaceSpec::parse("disk"), std::invalid_argument);
}

}  // namespace
}  // namespace ultragas
