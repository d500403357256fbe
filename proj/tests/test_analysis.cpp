#include "qfind/analysis.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

using namespace qfind::analysis;

TEST(Harmonic, FrozenValues) {
    EXPECT_EQ(harmonic(0), 0.0L);
    EXPECT_EQ(harmonic(1), 1.0L);
    EXPECT_NEAR(static_cast<double>(harmonic(4)), 25.0 / 12.0, 1e-15);
    const auto table = harmonic_table(10);
    EXPECT_NEAR(static_cast<double>(table[10]), 7381.0 / 2520.0, 1e-15);
}

TEST(Harmonic, BracketsHoldExhaustively) {
    const auto table = harmonic_table(500);
    for (std::uint64_t k = 1; k <= 500; ++k)
        for (std::uint64_t t = 0; t <= k; ++t) ASSERT_TRUE(harmonic_bounds_check(k, t, table[k], table[k - t]).all());
}

TEST(Harmonic, CheckDetectsAWrongValue) {
    EXPECT_FALSE(harmonic_bounds_check(10, 0, harmonic(10) + 0.1L, harmonic(10)).euler);
}

TEST(GeoTail, LogTermVanishesAtRhoOne) {
    EXPECT_NEAR(geo_tail_threshold(10.0, 0.2, 1.0), 2 * std::log(2.0) * 10.0, 1e-12);
}

TEST(CouponBudget, FrozenValues) {
    EXPECT_NEAR(coupon_budget(1, 2, 0.1), 6.271, 1e-3);
    EXPECT_NEAR(coupon_budget(8, 16, 0.1), 31.85, 0.01);
    EXPECT_THROW(coupon_budget(0, 4, 0.1), std::invalid_argument);
}

TEST(RunLength, FrozenExample) {
    EXPECT_NEAR(run_length_bound(4, 2, 2), 0.75, 1e-12);
    EXPECT_NEAR(run_probability_exact(4, 2, 2), 0.5, 1e-12);
    EXPECT_THROW(run_length_bound(4, 4, 1), std::invalid_argument);
}

TEST(RunLength, ExactNeverExceedsBound) {
    for (std::uint64_t k = 1; k <= 24; ++k)
        for (std::uint64_t t = 1; t < k; ++t)
            for (std::uint64_t ell = 1; ell <= k - t; ++ell)
                EXPECT_LE(run_probability_exact(k, t, ell), run_length_bound(k, t, ell) + 1e-12);
}

TEST(QueryBudget, MultipleFastFrozen) {
    BudgetParams p;
    p.n = 65536;
    p.k = 64;
    p.rho = 0.05;
    p.lambda = 6;
    const double expected = std::sqrt(65536.0 * 64) * (1 + std::log2(64 / (0.05 * 6)) / std::sqrt(6.0));
    EXPECT_NEAR(query_budget("multiple_fast", p).queries, expected, 1e-9);
}

TEST(QueryBudget, Grover23UnitScale) {
    BudgetParams p;
    p.n = 1024;
    p.k_lb = 1024;
    EXPECT_NEAR(query_budget("grover23", p).queries, 1.0, 1e-12);
    EXPECT_THROW(query_budget("nonsense", p), std::invalid_argument);
}

// With t = k/2 the coupon budget stays within a constant of t + ln(1/rho).
TEST(QueryBudget, CouponSimplificationWithinConstant) {
    double lo = 1e9, hi = 0;
    for (std::uint64_t k = 2; k <= 4096; k *= 2)
        for (double rho : {0.1, 0.01, 0.001}) {
            const double r = coupon_budget(k / 2, k, rho) / (double(k / 2) + std::log(1 / rho));
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
    EXPECT_LT(hi / lo, 4.0);
}
