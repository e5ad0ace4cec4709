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

#include "ultragas/birational.hpp"
#include "ultragas/exponents.hpp"
#include "ultragas/scalar.hpp"

namespace ultragas {
namespace {

TEST(Exponents, ChargesGiveProducts) {
  const auto spec = ExponentSpec::from_charges({1, 2, 3}, Rational(1, 2));
  EXPECT_EQ(spec.exact(1, 2), Rational(1));
  EXPECT_EQ(spec.exact(3, 1), Rational(3, 2));
  EXPECT_EQ(spec.exact(2, 3), Rational(3));
  EXPECT_TRUE(spec.charges().has_value());
}

TEST(Exponents, ELambdaCountsPairs) {
  const auto spec = ExponentSpec::from_charges({1, 2, 3}, Rational(1));
  EXPECT_EQ(std::get<Rational>(e_lambda(spec, IndexSet::range(3))), Rational(2 + 11));
  EXPECT_EQ(std::get<Rational>(e_lambda(spec, IndexSet(std::vector<int>{2, 3}))), Rational(1 + 6));
  EXPECT_EQ(std::get<Rational>(e_lambda(spec, IndexSet(std::vector<int>{2}))), Rational(0));
}

TEST(Exponents, DomainBoundary) {
  // Re(e) > 0 on the full set needs beta > -2/N for a one-component gas.
  EXPECT_TRUE(in_domain(ExponentSpec::uniform(4, Rational(-1, 3))));
  EXPECT_FALSE(in_domain(ExponentSpec::uniform(4, Rational(-1, 2))));
  EXPECT_FALSE(in_domain(ExponentSpec::uniform(4, Rational(-2, 3))));
  const auto bad = domain_violation(ExponentSpec::uniform(3, Rational(-1)), IndexSet::range(3).mask());
  ASSERT_TRUE(bad.has_value());
  EXPECT_EQ(bad->size(), 2u);
}

TEST(Exponents, ViolationMessageNamesSubset) {
  EXPECT_NE(describe_violation(IndexSet::range(3)).find("{1,2,3}"), std::string::npos);
}

TEST(Exponents, ComplexEntries) {
  const auto spec = ExponentSpec::uniform(3, Complex(1.0, 2.0));
  EXPECT_FALSE(spec.is_exact());
  const Complex e = std::get<Complex>(e_lambda(spec, IndexSet::range(3)));
  EXPECT_DOUBLE_EQ(e.real(), 5.0);
  EXPECT_DOUBLE_EQ(e.imag(), 6.0);
}

TEST(Exponents, PermutationMovesEntries) {
  const auto spec = ExponentSpec::direct(3, std::vector<Rational>{1, 2, 3});
  const auto p = spec.permuted({2, 3, 1});
  EXPECT_EQ(p.exact(2, 3), spec.exact(1, 2));
  EXPECT_EQ(p.exact(2, 1), spec.exact(1, 3));
  EXPECT_EQ(p.exact(3, 1), spec.exact(2, 3));
}

TEST(Exponents, RestrictionRelabels) {
  const auto spec = ExponentSpec::from_charges({1, 2, 3, 4}, Rational(1));
  const auto sub = spec.restrict_to(IndexSet(std::vector<int>{2, 4}));
  EXPECT_EQ(sub.order(), 2);
  EXPECT_EQ(sub.exact(1, 2), Rational(8));
}

TEST(Exponents, RejectsBadInput) {
  EXPECT_THROW(ExponentSpec::direct(3, std::vector<Rational>{1, 2}), std::invalid_argument);
  const auto spec = ExponentSpec::uniform(2, Rational(1));
  EXPECT_THROW(e_lambda(spec, IndexSet::range(3)), std::invalid_argument);
}

TEST(Scalar, ExactArithmetic) {
  ScalarValue a(Rational(1, 3)), b(Rational(1, 6));
  EXPECT_EQ((a + b).exact(), Rational(1, 2));
  EXPECT_EQ((a * b).exact(), Rational(1, 18));
  EXPECT_EQ((a / b).exact(), Rational(2));
  EXPECT_EQ((-a).to_string(), "-1/3");
}

TEST(Scalar, MixedKindsRejected) {
  EXPECT_THROW(ScalarValue(Rational(1)) + ScalarValue(Complex(1.0)), MixedModeError);
}

TEST(Scalar, ApproxEqualUsesRelativeTolerance) {
  EXPECT_TRUE(approx_equal(ScalarValue(Complex(1.0)), ScalarValue(Complex(1.0 + 1e-13)), 1e-12));
  EXPECT_FALSE(approx_equal(ScalarValue(Complex(1.0)), ScalarValue(Complex(1.0 + 1e-11)), 1e-12));
  EXPECT_FALSE(approx_equal(ScalarValue(Rational(1, 3)), ScalarValue(Rational(1, 4)), 1.0));
}

TEST(Scalar, FormatsSeventeenDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(1.0), "1");
}

// (q - 1) / (q - y^{-1}) at y = q^s: the two-point ball integral.
TEST(BiRational, SubstitutionMatchesRationalEvaluation) {
  const BiRational q = BiRational::q(), y = BiRational::y();
  const BiRational one(mpz_class(1));
  const BiRational f = (q - one) * y * BiRational::reciprocal_binomial(1, 1);
  for (int qq : {2, 3, 7}) {
    for (int s : {1, 2}) {
      mpq_class yy = 1;
      for (int i = 0; i < s; ++i) yy *= qq;
      const mpq_class expected = mpq_class(qq - 1) / (mpq_class(qq) - 1 / yy);
      EXPECT_EQ(f.evaluate(mpq_class(qq), yy), expected);
    }
  }
  const auto z = f.evaluate(std::complex<double>(2.0), std::complex<double>(4.0));
  EXPECT_NEAR(z.real(), 1.0 / (2.0 - 0.25), 1e-15);
}

TEST(BiRational, CancellationNormalizes) {
  const BiRational q = BiRational::q();
  const BiRational one(mpz_class(1));
  EXPECT_EQ((q * q - one) * BiRational::reciprocal_binomial(1, 0), q + one);
  EXPECT_EQ(BiRational::reciprocal_binomial(2, 0) * (q + one), BiRational::reciprocal_binomial(1, 0));
  EXPECT_THROW(BiRational::reciprocal_binomial(0, 0), std::domain_error);
  EXPECT_EQ((q * q) / q, q);
  EXPECT_TRUE((q - q).is_zero());
}

}  // namespace
}  // namespace ultragas
