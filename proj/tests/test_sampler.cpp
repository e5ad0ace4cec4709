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

#include <cmath>
#include <vector>

#include "ultragas/sampler.hpp"

namespace ultragas {
namespace {

DigitPoint digits(std::vector<std::uint32_t> d) { return DigitPoint{std::move(d)}; }

TEST(Distance, FirstDifferingDigit) {
  EXPECT_EQ(dist(digits({0, 1, 1, 0}), digits({1, 1, 1, 0})).level, 0);
  EXPECT_DOUBLE_EQ(dist(digits({0, 1, 1, 0}), digits({1, 1, 1, 0})).value(3), 1.0);
  const Distance d = dist(digits({2, 0, 1, 0}), digits({2, 0, 1, 1}));
  EXPECT_EQ(d.level, 3);
  EXPECT_FALSE(d.collision);
  EXPECT_DOUBLE_EQ(d.value(2), 0.125);
}

TEST(Distance, Collision) {
  const Distance d = dist(digits({1, 2, 3}), digits({1, 2, 3}));
  EXPECT_TRUE(d.collision);
  EXPECT_EQ(d.level, 3);
}

TEST(Distance, DepthMismatchThrows) {
  EXPECT_THROW(dist(digits({1, 2}), digits({1, 2, 3})), std::invalid_argument);
}

TEST(Distance, Sphere) {
  const SpherePoint a{0, digits({1, 0})}, b{2, digits({1, 0})}, c{0, digits({0, 0})}, d{0, digits({1, 1})};
  EXPECT_EQ(sphere_dist(a, b).level, 0);
  EXPECT_EQ(sphere_dist(a, c).level, 1);
  EXPECT_EQ(sphere_dist(a, d).level, 2);
  EXPECT_TRUE(sphere_dist(a, a).collision);
}

TEST(Sampling, CylinderFrequencies) {
  const int q = 3, n = 60000;
  auto rng = stream_rng(11, 0);
  int in_cylinder = 0;
  std::vector<int> balls(q + 1, 0);
  for (int i = 0; i < n; ++i) {
    const DigitPoint x = random_digits(rng, q, 8);
    if (x.digits[0] == 1 && x.digits[1] == 2) ++in_cylinder;
    ++balls[random_sphere_point(rng, q, 8).ball];
  }
  const double p = 1.0 / 9;
  EXPECT_LT(std::abs(in_cylinder - n * p), 4 * std::sqrt(n * p * (1 - p)));
  const double pb = 1.0 / (q + 1);
  for (int count : balls) EXPECT_LT(std::abs(count - n * pb), 4 * std::sqrt(n * pb * (1 - pb)));
}

TEST(Sampling, DigitsInRange) {
  auto rng = stream_rng(3, 5);
  for (int i = 0; i < 100; ++i) {
    for (auto d : random_digits(rng, 5, 16).digits) EXPECT_LT(d, 5u);
  }
}

TEST(MonteCarlo, ZeroExponentIsExactlyOne) {
  McOptions options;
  options.samples = 1000;
  const McEstimate est = mc_estimate(SpaceSpec::R(), ExponentSpec::zero(3), 2, options);
  EXPECT_EQ(est.mean, 1.0);
  EXPECT_EQ(est.std_error, 0.0);
}

TEST(MonteCarlo, TwoPointsWithinThreeSigma) {
  McOptions options;
  options.samples = 200000;
  options.seed = 42;
  const McEstimate est = mc_estimate(SpaceSpec::R(), ExponentSpec::uniform(2, Rational(1)), 2, options);
  EXPECT_LT(std::abs(est.mean - 2.0 / 3.0), 3 * est.std_error);
  ASSERT_TRUE(est.enclosure.has_value());
  EXPECT_LE(est.enclosure->first, 2.0 / 3.0);
  EXPECT_GE(est.enclosure->second, 2.0 / 3.0);
  EXPECT_FALSE(est.biased);
}

TEST(MonteCarlo, DeterministicAcrossWorkers) {
  McOptions options;
  options.samples = 50000;
  options.seed = 9;
  const auto spec = ExponentSpec::from_charges({1, 2, 3}, Rational(1));
  options.workers = 1;
  const McEstimate one = mc_estimate(SpaceSpec::projective(), spec, 2, options);
  options.workers = 4;
  const McEstimate four = mc_estimate(SpaceSpec::projective(), spec, 2, options);
  EXPECT_EQ(one.mean, four.mean);
  EXPECT_EQ(one.std_error, four.std_error);
  EXPECT_EQ(one.collisions, four.collisions);
}

TEST(MonteCarlo, CollisionsAtShallowDepth) {
  McOptions options;
  options.samples = 100000;
  options.depth = 3;
  const McEstimate est = mc_estimate(SpaceSpec::R(), ExponentSpec::uniform(2, Rational(1)), 2, options);
  // One pair per sample collides with probability q^{-D}.
  const double expected = options.samples / 8.0;
  EXPECT_LT(std::abs(est.collisions - expected), 4 * std::sqrt(expected));
  ASSERT_TRUE(est.enclosure.has_value());
  EXPECT_LT(est.enclosure->first, est.mean);
}

TEST(MonteCarlo, NegativeExponentsFlagged) {
  McOptions options;
  options.samples = 1000;
  const McEstimate est = mc_estimate(SpaceSpec::R(), ExponentSpec::uniform(2, Rational(-1, 2)), 2, options);
  EXPECT_TRUE(est.biased);
  EXPECT_FALSE(est.enclosure.has_value());
}

TEST(MonteCarlo, RejectsBadArguments) {
  McOptions options;
  const auto spec = ExponentSpec::uniform(2, Rational(1));
  options.samples = 0;
  EXPECT_THROW(mc_estimate(SpaceSpec::R(), spec, 2, options), std::invalid_argument);
  options.samples = 10;
  options.depth = 0;
  EXPECT_THROW(mc_estimate(SpaceSpec::R(), spec, 2, options), std::invalid_argument);
  options.depth = 4;
  EXPECT_THROW(mc_estimate(SpaceSpec::R(), spec, 1, options), std::invalid_argument);
  EXPECT_THROW(mc_estimate(SpaceSpec::R(), ExponentSpec::uniform(2, Complex(1.0, 1.0)), 2, options),
               std::invalid_argument);
}

}  // namespace
}  // namespace ultragas
