#include "credit/weights.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "oracle.hpp"

namespace credit {
namespace {

Rational R(std::int64_t n, std::int64_t d = 1) { return {BigInt(n), BigInt(d)}; }

std::vector<std::string> cells(std::span<const Rational> values) {
  std::vector<std::string> out;
  for (const auto& v : values) out.push_back(v.display());
  return out;
}

using Cells = std::vector<std::string>;

TEST(PolynomialTypeI, Examples) {
  EXPECT_EQ(cells(polynomial_type1_weights(3, R(1, 2)).values()), (Cells{"4/7", "2/7", "1/7"}));
  EXPECT_EQ(cells(polynomial_type1_weights(1, R(1, 4)).values()), (Cells{"1"}));
  // Oracle: terms 27, 9, 3, 1 (x = 1/3 scaled by 3^3) over their sum 40.
  const auto oracle_w = oracle::polynomial(4, 1, 3, false);
  EXPECT_EQ(oracle::of_all(polynomial_type1_weights(4, R(1, 3)).values()), oracle_w);
  EXPECT_EQ(cells(polynomial_type1_weights(4, R(1, 3)).values()), (Cells{"27/40", "9/40", "3/40", "1/40"}));
}

TEST(PolynomialTypeI, DomainErrors) {
  EXPECT_THROW(polynomial_type1_weights(0, R(1, 2)), DomainError);
  EXPECT_THROW(polynomial_type1_weights(-3, R(1, 2)), DomainError);
  EXPECT_THROW(polynomial_type1_weights(3, R(0)), DomainError);
  EXPECT_THROW(polynomial_type1_weights(3, R(-1, 2)), DomainError);
  EXPECT_THROW(polynomial_type1_weights(3, R(3, 2)), DomainError);
  EXPECT_THROW(polynomial_type1_weights(3, 1.5), DomainError);
  EXPECT_THROW(polynomial_type1_weights(3, std::nan("")), DomainError);
  EXPECT_NO_THROW(polynomial_type1_weights(3, R(1)));
}

TEST(PolynomialTypeII, Examples) {
  EXPECT_EQ(cells(polynomial_type2_weights(3, R(2)).values()), (Cells{"4/7", "2/7", "1/7"}));
  const auto ten = polynomial_type2_weights(10, R(2));
  EXPECT_EQ(ten.weight(1), R(512, 1023));
  EXPECT_EQ(ten.weight(10), R(1, 1023));
  EXPECT_EQ(cells(polynomial_type2_weights(3, R(1)).values()), (Cells{"1/3", "1/3", "1/3"}));
}

TEST(PolynomialTypeII, DomainErrors) {
  EXPECT_THROW(polynomial_type2_weights(0, R(2)), DomainError);
  EXPECT_THROW(polynomial_type2_weights(3, R(1, 2)), DomainError);
  EXPECT_THROW(polynomial_type2_weights(3, 0.99), DomainError);
}

TEST(WeightVector, OneBasedAccessAndProvenance) {
  const auto w = polynomial_type2_weights(3, R(2));
  EXPECT_EQ(w.k(), 3);
  EXPECT_EQ(w.weight(1), R(4, 7));
  EXPECT_THROW(w.weight(0), IndexError);
  EXPECT_THROW(w.weight(4), IndexError);
  EXPECT_EQ(w.scheme(), SchemeSpec(SchemeKind::PolynomialTypeII, Parameter(R(2))));
}

TEST(ClosedForm, Examples) {
  EXPECT_EQ(polynomial_weight_closed_form(3, 1, R(2), PolynomialKind::TypeII), R(4, 7));
  EXPECT_EQ(polynomial_weight_closed_form(5, 5, R(2), PolynomialKind::TypeII), R(1, 31));
  const auto oracle_w = oracle::polynomial(4, 1, 3, false);
  EXPECT_EQ(oracle::of(polynomial_weight_closed_form(4, 2, R(1, 3), PolynomialKind::TypeI)), oracle_w[1]);
  EXPECT_EQ(polynomial_weight_closed_form(4, 2, R(1, 3), PolynomialKind::TypeI), R(9, 40));
}

TEST(ClosedForm, Errors) {
  EXPECT_THROW(polynomial_weight_closed_form(3, 1, R(1), PolynomialKind::TypeII), DomainError);
  EXPECT_THROW(polynomial_weight_closed_form(3, 1, R(1), PolynomialKind::TypeI), DomainError);
  EXPECT_THROW(polynomial_weight_closed_form(3, 0, R(2), PolynomialKind::TypeII), IndexError);
  EXPECT_THROW(polynomial_weight_closed_form(3, 4, R(2), PolynomialKind::TypeII), IndexError);
  EXPECT_THROW(polynomial_weight_closed_form(3, 1, R(1, 2), PolynomialKind::TypeII), DomainError);
  EXPECT_THROW(polynomial_weight_closed_form(3, 1, R(2), PolynomialKind::TypeI), DomainError);
}

TEST(EqualWeights, Examples) {
  EXPECT_EQ(cells(equal_weights(3).values()), (Cells{"1/3", "1/3", "1/3"}));
  EXPECT_EQ(cells(equal_weights(1).values()), (Cells{"1"}));
  EXPECT_EQ(cells(equal_weights(7).values()), Cells(7, "1/7"));
  EXPECT_THROW(equal_weights(0), DomainError);
}

TEST(GeometricWeights, Examples) {
  EXPECT_EQ(cells(geometric_weights(3).values()), (Cells{"4/7", "2/7", "1/7"}));
  EXPECT_EQ(cells(geometric_weights(2).values()), (Cells{"2/3", "1/3"}));
  EXPECT_EQ(cells(geometric_weights(1).values()), (Cells{"1"}));
  EXPECT_THROW(geometric_weights(0), DomainError);
}

TEST(ArithmeticWeights, Examples) {
  EXPECT_EQ(oracle::of_all(arithmetic_weights(3).values()), oracle::arithmetic(3));
  EXPECT_EQ(cells(arithmetic_weights(3).values()), (Cells{"1/2", "1/3", "1/6"}));
  EXPECT_EQ(cells(arithmetic_weights(1).values()), (Cells{"1"}));
  EXPECT_EQ(cells(arithmetic_weights(2).values()), (Cells{"2/3", "1/3"}));
  EXPECT_THROW(arithmetic_weights(0), DomainError);
}

TEST(HarmonicWeights, Examples) {
  EXPECT_EQ(oracle::of_all(harmonic_weights(3).values()), oracle::harmonic(3));
  EXPECT_EQ(cells(harmonic_weights(3).values()), (Cells{"6/11", "3/11", "2/11"}));
  EXPECT_EQ(cells(harmonic_weights(1).values()), (Cells{"1"}));
  EXPECT_EQ(cells(harmonic_weights(2).values()), (Cells{"2/3", "1/3"}));
  EXPECT_THROW(harmonic_weights(-1), DomainError);
}

TEST(ComputeWeights, DispatchesAndCarriesSpec) {
  const SchemeSpec poly2(SchemeKind::PolynomialTypeII, Parameter(R(2)));
  const auto six = compute_weights<Rational>(poly2, 6);
  EXPECT_EQ(cells(six.values()), (Cells{"32/63", "16/63", "8/63", "4/63", "2/63", "1/63"}));
  EXPECT_EQ(six.scheme(), poly2);

  const auto eq = compute_weights<Rational>(SchemeSpec(SchemeKind::Equal), 4);
  EXPECT_EQ(cells(eq.values()), Cells(4, "1/4"));

  const SchemeSpec poly1(SchemeKind::PolynomialTypeI, Parameter(R(1, 2)));
  EXPECT_EQ(cells(compute_weights<Rational>(poly1, 8).values()),
            (Cells{"128/255", "64/255", "32/255", "16/255", "8/255", "4/255", "2/255", "1/255"}));
  EXPECT_EQ(compute_weights<Rational>(poly1, 8).scheme(), poly1);

  EXPECT_THROW(compute_weights<Rational>(poly2, 0), DomainError);
}

TEST(ComputeWeights, BackendFollowsParameterForm) {
  const auto exact = compute_weights(SchemeSpec(SchemeKind::PolynomialTypeII, Parameter(R(2))), 3);
  ASSERT_TRUE(std::holds_alternative<WeightVector<Rational>>(exact));
  const auto fl = compute_weights(SchemeSpec(SchemeKind::PolynomialTypeII, Parameter(2.0)), 3);
  ASSERT_TRUE(std::holds_alternative<WeightVector<double>>(fl));
  const auto& w = std::get<WeightVector<double>>(fl);
  EXPECT_DOUBLE_EQ(w.weight(1), 4.0 / 7.0);
  EXPECT_TRUE(std::holds_alternative<WeightVector<Rational>>(compute_weights(SchemeSpec(SchemeKind::Harmonic), 3)));
}

TEST(SchemeSpec, Validation) {
  EXPECT_THROW(SchemeSpec(SchemeKind::PolynomialTypeI), DomainError);
  EXPECT_THROW(SchemeSpec(SchemeKind::Equal, Parameter(R(2))), DomainError);
  EXPECT_THROW(SchemeSpec(SchemeKind::PolynomialTypeII, Parameter(R(1, 2))), DomainError);
  EXPECT_THROW(SchemeSpec(SchemeKind::PolynomialTypeI, Parameter(R(0))), DomainError);
  EXPECT_THROW(SchemeSpec(SchemeKind::PolynomialTypeII, Parameter(INFINITY)), DomainError);
  EXPECT_TRUE(SchemeSpec(SchemeKind::Equal).exact());
  EXPECT_FALSE(SchemeSpec(SchemeKind::PolynomialTypeI, Parameter(0.3)).exact());
}

TEST(ParseParameter, DecimalRule) {
  EXPECT_EQ(std::get<Rational>(parse_parameter("0.5")), R(1, 2));
  EXPECT_EQ(std::get<Rational>(parse_parameter("1/2")), R(1, 2));
  EXPECT_EQ(std::get<Rational>(parse_parameter("2")), R(2));
  EXPECT_EQ(std::get<Rational>(parse_parameter("0.123456")), R(123456, 1000000));
  EXPECT_DOUBLE_EQ(std::get<double>(parse_parameter("0.1234567")), 0.1234567);
  EXPECT_DOUBLE_EQ(std::get<double>(parse_parameter("1e-1")), 0.1);
  EXPECT_THROW(parse_parameter("abc"), ParseError);
  EXPECT_THROW(parse_parameter(""), ParseError);
  EXPECT_THROW(parse_parameter("1/0"), ParseError);
}

TEST(FirstLastRatio, Examples) {
  EXPECT_EQ(first_last_ratio(3, R(2), PolynomialKind::TypeII), R(4));
  EXPECT_EQ(first_last_ratio(3, R(1, 2), PolynomialKind::TypeI), R(4));
  EXPECT_EQ(first_last_ratio(10, R(2), PolynomialKind::TypeII), R(512));
  EXPECT_EQ(first_last_ratio(1, R(2), PolynomialKind::TypeII), R(1));
  EXPECT_THROW(first_last_ratio(3, R(1), PolynomialKind::TypeII), DomainError);
  EXPECT_THROW(first_last_ratio(3, R(1, 2), PolynomialKind::TypeII), DomainError);
}

TEST(DualParameter, Examples) {
  EXPECT_EQ(dual_parameter(R(2)), R(1, 2));
  EXPECT_EQ(dual_parameter(R(1)), R(1));
  EXPECT_EQ(dual_parameter(R(1, 4)), R(4));
  EXPECT_DOUBLE_EQ(dual_parameter(4.0), 0.25);
  EXPECT_THROW(dual_parameter(R(0)), DomainError);
  EXPECT_THROW(dual_parameter(R(-2)), DomainError);
}

TEST(FloatBackend, ExtremeParametersRaiseRangeError) {
  // 1e-10^49 underflows: the weight would not be strictly positive.
  EXPECT_THROW(polynomial_type1_weights(50, 1e-10), RangeError);
  EXPECT_THROW(polynomial_type2_weights(400, 10.0), RangeError);
}

// ---- properties ----------------------------------------------------------

class WeightProperty : public ::testing::Test {
 protected:
  // Random x = p/q > 1 with small terms, as (p, q).
  std::pair<std::int64_t, std::int64_t> random_above_one() {
    std::uniform_int_distribution<std::int64_t> den(1, 12);
    const std::int64_t q = den(rng_);
    std::uniform_int_distribution<std::int64_t> num(q + 1, 10 * q);
    return {num(rng_), q};
  }
  std::mt19937_64 rng_{42};
};

TEST_F(WeightProperty, PolynomialMatchesIntegerOracle) {
  for (int trial = 0; trial < 100; ++trial) {
    const auto [p, q] = random_above_one();
    const std::int64_t k = 1 + trial % 20;
    ASSERT_EQ(oracle::of_all(polynomial_type2_weights(k, R(p, q)).values()), oracle::polynomial(k, p, q, true))
        << "k=" << k << " x=" << p << "/" << q;
    ASSERT_EQ(oracle::of_all(polynomial_type1_weights(k, R(q, p)).values()), oracle::polynomial(k, q, p, false))
        << "k=" << k << " x=" << q << "/" << p;
  }
}

TEST_F(WeightProperty, NormalizationAndMonotoneDecrease) {
  for (std::int64_t k = 1; k <= 50; ++k) {
    const auto [p, q] = random_above_one();
    for (const auto& w : {polynomial_type2_weights(k, R(p, q)), polynomial_type1_weights(k, R(q, p)),
                          geometric_weights(k), arithmetic_weights(k), harmonic_weights(k)}) {
      ASSERT_EQ(w.sum(), R(1));
      for (std::int64_t j = 1; j < k; ++j) ASSERT_GT(w.weight(j), w.weight(j + 1));
      for (std::int64_t j = 1; j <= k; ++j) ASSERT_GT(w.weight(j), R(0));
    }
    ASSERT_EQ(equal_weights(k).sum(), R(1));
  }
}

TEST_F(WeightProperty, FloatNormalization) {
  std::uniform_real_distribution<double> above(1.0, 10.0);
  std::uniform_real_distribution<double> below(0.05, 1.0);
  for (std::int64_t k = 1; k <= 50; ++k) {
    for (int t = 0; t < 20; ++t) {
      const double x2 = above(rng_);
      const double x1 = below(rng_);
      ASSERT_LT(std::fabs(polynomial_type2_weights(k, x2).sum() - 1.0), 1e-12) << k << " " << x2;
      ASSERT_LT(std::fabs(polynomial_type1_weights(k, x1).sum() - 1.0), 1e-12) << k << " " << x1;
    }
  }
}

TEST(WeightInvariants, EqualWeightLimit) {
  for (std::int64_t k = 1; k <= 50; ++k) {
    const auto eq = equal_weights(k);
    const std::vector<Rational> expected(eq.values().begin(), eq.values().end());
    const auto p1 = compute_weights<Rational>(SchemeSpec(SchemeKind::PolynomialTypeI, Parameter(R(1))), k);
    const auto p2 = compute_weights<Rational>(SchemeSpec(SchemeKind::PolynomialTypeII, Parameter(R(1))), k);
    ASSERT_TRUE(std::ranges::equal(p1.values(), expected));
    ASSERT_TRUE(std::ranges::equal(p2.values(), expected));
  }
}

TEST(WeightInvariants, GeometricSpecialization) {
  for (std::int64_t k = 1; k <= 20; ++k) {
    ASSERT_TRUE(std::ranges::equal(polynomial_type2_weights(k, R(2)).values(), geometric_weights(k).values()));
  }
}

TEST_F(WeightProperty, ClosedFormEqualsSummation) {
  for (std::int64_t k = 1; k <= 20; ++k) {
    const auto [p, q] = random_above_one();
    const auto w2 = polynomial_type2_weights(k, R(p, q));
    const auto w1 = polynomial_type1_weights(k, R(q, p));
    for (std::int64_t j = 1; j <= k; ++j) {
      ASSERT_EQ(polynomial_weight_closed_form(k, j, R(p, q), PolynomialKind::TypeII), w2.weight(j));
      ASSERT_EQ(polynomial_weight_closed_form(k, j, R(q, p), PolynomialKind::TypeI), w1.weight(j));
    }
  }
}

TEST_F(WeightProperty, DualityAndRatioLaw) {
  for (int trial = 0; trial < 100; ++trial) {
    const auto [p, q] = random_above_one();
    const Rational x = R(p, q);
    const std::int64_t k = 1 + trial % 20;
    ASSERT_TRUE(std::ranges::equal(polynomial_type1_weights(k, dual_parameter(x)).values(),
                                   polynomial_type2_weights(k, x).values()));
    const auto expected = pow(x, static_cast<std::uint64_t>(k - 1));
    ASSERT_EQ(first_last_ratio(k, x, PolynomialKind::TypeII), expected);
    ASSERT_EQ(first_last_ratio(k, dual_parameter(x), PolynomialKind::TypeI), expected);
  }
}

TEST(WeightInvariants, LastAuthorDecayAtTwo) {
  Rational previous;
  for (std::int64_t k = 1; k <= 10; ++k) {
    const auto w = polynomial_type2_weights(k, R(2));
    const Rational last = w.weight(k);
    ASSERT_EQ(last, R(1, (std::int64_t{1} << k) - 1));
    if (k > 1) {
      ASSERT_LT(last, previous);
      ASSERT_LE(last, previous / 2);
    }
    previous = last;
  }
}

}  // namespace
}  // namespace credit
