#include <random>
#include <vector>

#include <gtest/gtest.h>

#include <qtel/qalgebra.hpp>

#include "oracles.hpp"

using qtel::Integer;
using qtel::LaurentPoly;
using qtel::TruncatedSeries;

namespace
{

LaurentPoly mono(long long c, int z, int q)
{
    return LaurentPoly::monomial(c, z, q);
}

LaurentPoly from_q_coeffs(const std::map<int, long long> &coeffs)
{
    LaurentPoly p;
    for (const auto &[e, c] : coeffs) {
        p += mono(c, 0, e);
    }
    return p;
}

LaurentPoly random_poly(std::mt19937 &rng)
{
    std::uniform_int_distribution<int> terms(0, 4), exp(-3, 3), coef(-5, 5);
    LaurentPoly p;
    const int t = terms(rng);
    for (int i = 0; i < t; ++i) {
        p += mono(coef(rng), exp(rng), exp(rng));
    }
    return p;
}

} // namespace

TEST(LaurentPoly, AddCancels)
{
    const LaurentPoly a = LaurentPoly(1) + mono(1, 0, 1);
    EXPECT_EQ(a + mono(-1, 0, 1), LaurentPoly(1));
    EXPECT_EQ((a + mono(-1, 0, 1)).size(), 1u);
}

TEST(LaurentPoly, AddZeroAndDisjoint)
{
    const LaurentPoly p = mono(3, 2, -1) + mono(-2, 0, 5);
    EXPECT_EQ(LaurentPoly{} + p, p);
    const LaurentPoly s = mono(1, -1, 1) + mono(1, 1, 1);
    EXPECT_EQ(s.size(), 2u);
    EXPECT_EQ(s.coefficient(-1, 1), 1);
    EXPECT_EQ(s.coefficient(1, 1), 1);
}

TEST(LaurentPoly, MultiplyMacMahonSmallest)
{
    const LaurentPoly a = LaurentPoly(1) + mono(1, -1, 1);
    const LaurentPoly b = LaurentPoly(1) + mono(1, 1, 1);
    const LaurentPoly expected = LaurentPoly(1) + mono(1, 1, 1) + mono(1, -1, 1) + mono(1, 0, 2);
    EXPECT_EQ(a * b, expected);
}

TEST(LaurentPoly, MultiplyIdentityAndZero)
{
    const LaurentPoly p = mono(7, 1, 2) + mono(-1, -2, 0);
    EXPECT_EQ(p * LaurentPoly(1), p);
    EXPECT_TRUE((p * LaurentPoly{}).is_zero());
}

TEST(LaurentPoly, CoefficientsAreUnbounded)
{
    LaurentPoly p = LaurentPoly(1) + mono(1, 0, 1);
    LaurentPoly r(1);
    for (int i = 0; i < 100; ++i) {
        r *= p;
    }
    // binomial(100, 50) does not fit in 64 bits.
    EXPECT_EQ(r.coefficient(0, 50).str(), "100891344545564193334812497256");
}

TEST(LaurentPoly, RingLawsOnRandomValues)
{
    std::mt19937 rng(20240611);
    for (int trial = 0; trial < 300; ++trial) {
        const LaurentPoly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_TRUE((a + (-a)).is_zero());
        EXPECT_TRUE((a - a).is_zero());
        const LaurentPoly ab = a * b;
        for (const auto &[e, coef] : ab.terms()) {
            EXPECT_NE(coef, 0);
        }
    }
}

TEST(LaurentPoly, JsonIsSortedAndDecimal)
{
    const LaurentPoly p = mono(2, 1, 0) + mono(-3, -1, 4) + mono(1, -1, -2);
    EXPECT_EQ(nlohmann::json(p).dump(),
              R"([{"c":"1","q":-2,"z":-1},{"c":"-3","q":4,"z":-1},{"c":"2","q":0,"z":1}])");
    EXPECT_EQ(nlohmann::json(p).get<LaurentPoly>(), p);
}

TEST(GaussianBinomial, SmallValues)
{
    EXPECT_EQ(qtel::gaussian_binomial(2, 1), LaurentPoly(1) + mono(1, 0, 1));
    EXPECT_EQ(qtel::gaussian_binomial(4, 2),
              LaurentPoly(1) + mono(1, 0, 1) + mono(2, 0, 2) + mono(1, 0, 3) + mono(1, 0, 4));
    EXPECT_EQ(qtel::gaussian_binomial(5, 0, 2), LaurentPoly(1));
    EXPECT_TRUE(qtel::gaussian_binomial(3, -1).is_zero());
    EXPECT_TRUE(qtel::gaussian_binomial(3, 4).is_zero());
}

TEST(GaussianBinomial, MatchesBoxOracle)
{
    for (int n = 0; n <= 9; ++n) {
        for (int k = 0; k <= n; ++k) {
            EXPECT_EQ(qtel::gaussian_binomial(n, k), from_q_coeffs(oracle::box_polynomial(k, n - k)))
                << "n=" << n << " k=" << k;
        }
    }
}

TEST(GaussianBinomial, CountDegreeAndPalindrome)
{
    for (int n = 0; n <= 12; ++n) {
        for (int k = 0; k <= n; ++k) {
            const LaurentPoly g = qtel::gaussian_binomial(n, k);
            EXPECT_EQ(g.coefficient_sum(), oracle::binomial(n, k));
            EXPECT_EQ(*g.max_q(), k * (n - k));
            EXPECT_EQ(*g.min_q(), 0);
            const int d = k * (n - k);
            for (const auto &[e, c] : g.terms()) {
                EXPECT_GT(c, 0);
                EXPECT_EQ(g.coefficient(0, d - e.q), c);
            }
        }
    }
}

TEST(GaussianBinomial, StepScalesExponents)
{
    for (int n = 0; n <= 8; ++n) {
        for (int k = 0; k <= n; ++k) {
            for (int step : {2, 3}) {
                EXPECT_EQ(qtel::gaussian_binomial(n, k, step), qtel::gaussian_binomial(n, k).scale_q(step));
            }
        }
    }
}

TEST(FactorProduct, Examples)
{
    EXPECT_EQ(qtel::factor_product(1, 1, 1, 1, 2), LaurentPoly(1) + mono(1, 1, 1));
    EXPECT_EQ(qtel::factor_product(1, 1, -1, 1, 2), LaurentPoly(1) + mono(1, -1, 1));
    EXPECT_EQ(qtel::factor_product(0, -1, 3, 7, 1), LaurentPoly(1));
}

TEST(FactorProduct, CoefficientSumIsPowerOfTwo)
{
    for (int count = 0; count <= 8; ++count) {
        EXPECT_EQ(qtel::factor_product(count, 1, 1, 1, 2).coefficient_sum(), Integer(1) << count);
        EXPECT_EQ(qtel::factor_product(count, 1, -1, 0, 1).coefficient_sum(), Integer(1) << count);
    }
    // the z-degree counts the factors used, so no two terms of different size cancel
    EXPECT_EQ(qtel::factor_product(3, 1, 1, 1, 2).size(), 8u);
}

TEST(RhsAndrews, SmallValues)
{
    EXPECT_EQ(qtel::rhs_andrews(0), LaurentPoly(1));
    EXPECT_EQ(qtel::rhs_andrews(1), LaurentPoly(2) - mono(1, 0, 1));
    EXPECT_EQ(qtel::rhs_andrews(2), LaurentPoly(2) - mono(2, 0, 3) + mono(1, 0, 4));
}

TEST(RhsAndrews, DegreeBoundsAndGnRecurrence)
{
    for (int n = 0; n <= 12; ++n) {
        const LaurentPoly r = qtel::rhs_andrews(n);
        EXPECT_TRUE(r.is_z_free());
        EXPECT_EQ(*r.min_q(), 0);
        EXPECT_EQ(*r.max_q(), n * n);
        if (n >= 1) {
            EXPECT_EQ(r + qtel::rhs_andrews(n - 1).shifted(0, 2 * n - 1), LaurentPoly(2)) << n;
        }
    }
}

TEST(Truncate, Examples)
{
    const TruncatedSeries a = qtel::truncate(qtel::rhs_andrews(2), 3);
    EXPECT_EQ(a, TruncatedSeries(3, {{0, 2}, {3, -2}}));
    EXPECT_TRUE(qtel::truncate(LaurentPoly{}, 10).is_zero());
    EXPECT_EQ(qtel::truncate(LaurentPoly(1) + mono(1, 0, 5), 5), TruncatedSeries(5, {{0, 1}, {5, 1}}));
}

TEST(Truncate, RejectsZOrNegativeExponents)
{
    EXPECT_THROW(qtel::truncate(mono(1, 1, 0), 4), qtel::precondition_error);
    EXPECT_THROW(qtel::truncate(mono(1, 0, -1), 4), qtel::precondition_error);
}

TEST(TruncatedSeries, ArithmeticUsesMinimumCap)
{
    const TruncatedSeries a(5, {{0, 1}, {5, 1}});
    const TruncatedSeries b(3, {{1, 2}});
    EXPECT_EQ((a + b).cap(), 3);
    EXPECT_EQ(a + b, TruncatedSeries(3, {{0, 1}, {1, 2}}));
    EXPECT_EQ(a * b, TruncatedSeries(3, {{1, 2}}));
    EXPECT_EQ(a.shifted(2), TruncatedSeries(5, {{2, 1}}));
    EXPECT_EQ(a.first_mismatch(TruncatedSeries(5, {{0, 1}}), 4), std::nullopt);
    EXPECT_EQ(a.first_mismatch(TruncatedSeries(5, {{0, 1}}), 5), 5);
}
