#include "qfind/summing.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace qfind;

TEST(ChooseParams, SimpleModeFrozen) {
    const auto s = choose_params(4096, 0.05, 0.05, ParamMode::simple);
    EXPECT_NEAR(s.p, 1.0 / 204.8, 1e-12);
    EXPECT_NEAR(s.p, 0.00488, 5e-6);
    EXPECT_EQ(s.lambda, 6.0);
}

TEST(ChooseParams, QueryOptimalScalesWithLogRho) {
    const auto q = choose_params(4096, 0.05, 0.05, ParamMode::query_optimal);
    EXPECT_NEAR(q.p, std::log2(20.0) / 204.8, 1e-12);
    EXPECT_GE(q.lambda, 6.0);
}

TEST(ChooseParams, ClampsToOneOverN) {
    const auto s = choose_params(64, 0.999, 0.5, ParamMode::simple);
    EXPECT_GE(s.p * 64, 1.0 - 1e-12);
    EXPECT_LE(s.p, 0.5);
    EXPECT_FALSE(s.in_regime);
}

TEST(QuantileWindow, ContainsTheTargetRanks) {
    for (std::uint64_t n : {64ULL, 1024ULL, 4096ULL})
        for (double p : {0.5, 0.1, 0.01}) {
            if (p * double(n) < 1) continue;
            const auto w = quantile_window(n, p, 0.5);
            EXPECT_EQ(w.rank_hi, static_cast<std::uint64_t>(std::ceil(p * double(n))));
            EXPECT_EQ(w.rank_lo, static_cast<std::uint64_t>(std::ceil(0.5 * p * double(n))));
            EXPECT_LE(w.low, w.high);
            // Estimates inside [low, high] certify ranks inside the window.
            EXPECT_GE(double(w.low) / (1 - w.eps), double(w.rank_lo) - 1e-9);
            EXPECT_LE(double(w.high) / (1 + w.eps), double(w.rank_hi) + 1e-9);
        }
}

TEST(Quantile, ConstantVector) {
    Rng rng(1);
    QueryLedger ledger;
    FixedVector v(std::vector<std::uint64_t>(256, 77), 8, ledger);
    const auto q = quantile_estimate(v, 0.25, 0.05, rng);
    EXPECT_EQ(q.key.raw, 77u);
}

TEST(Quantile, RampLandsBetweenTheQuantiles) {
    Rng rng(2);
    const std::uint64_t n = 256;
    std::vector<std::uint64_t> raw(n);
    for (std::uint64_t i = 0; i < n; ++i) raw[i] = i + 1;  // (1, ..., N) / 2N with b = log2(2N)
    int inside = 0;
    const int trials = 500;
    for (int t = 0; t < trials; ++t) {
        QueryLedger ledger;
        FixedVector v(raw, 9, ledger);
        const auto q = quantile_estimate(v, 0.5, 0.05, rng);
        const auto rank = rank_of(v, q.key);
        inside += rank >= 64 && rank <= 128;
        EXPECT_EQ(q.queries_used, ledger.oracle_queries);
    }
    EXPECT_GE(inside / double(trials), 0.95 - 3 * std::sqrt(0.95 * 0.05 / trials));
}

TEST(ApproxSum, ZeroVectorIsExact) {
    Rng rng(3);
    QueryLedger ledger;
    FixedVector v(std::vector<std::uint64_t>(256, 0), 16, ledger);
    const auto e = approx_sum(v, 0.1, 1.0 / 16, 6, 0.05, rng);
    EXPECT_EQ(e.value, 0.0);
    EXPECT_EQ(e.branch, SumBranch::classical_only);
}

TEST(ApproxSum, SingleLargeEntryIsFoundExactly) {
    Rng rng(4);
    int exact = 0;
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
        QueryLedger ledger;
        std::vector<std::uint64_t> raw(256, 0);
        raw[t % 256] = (1u << 16) - 1;
        FixedVector v(raw, 16, ledger);
        const auto e = approx_sum(v, 0.1, 1.0 / 128, 6, 0.05, rng);
        exact += e.value == v.sum();
    }
    EXPECT_GE(exact / double(trials), 0.95 - 3 * std::sqrt(0.95 * 0.05 / trials));
}

TEST(ApproxSum, ConstantVectorIsNearlyExact) {
    Rng rng(5);
    QueryLedger ledger;
    FixedVector v(std::vector<std::uint64_t>(1024, 1000), 12, ledger);
    const double truth = v.sum();
    for (int t = 0; t < 20; ++t) EXPECT_NEAR(approx_sum(v, 0.1, 1.0 / 64, 6, 0.05, rng).value, truth, 0.1 * truth);
}

TEST(ApproxSum, RandomVectorsWithinDelta) {
    Rng rng(6);
    const std::uint64_t n = 1024;
    const double delta = 0.05, rho = 0.05;
    const auto params = choose_params(n, delta, rho, ParamMode::simple);
    const int trials = 300;
    int good = 0;
    for (int t = 0; t < trials; ++t) {
        QueryLedger ledger;
        std::vector<std::uint64_t> raw(n);
        for (auto& r : raw) r = rng.next_u64() >> 32;
        FixedVector v(raw, 32, ledger);
        const auto e = approx_sum(v, delta, params.p, params.lambda, rho, rng);
        good += std::abs(e.value - v.sum()) <= delta * v.sum();
        EXPECT_EQ(e.queries_used, ledger.oracle_queries);
    }
    EXPECT_GE(good / double(trials), 0.95 - 3 * std::sqrt(0.95 * 0.05 / trials));
}

TEST(ApproxSum, GridFollowsTheTailBound) {
    // 12 pi / sqrt(delta^2 p c), rounded up to a power of two.
    const double m = 12 * 3.14159265358979 / std::sqrt(0.01 * 0.01 * 0.5);
    EXPECT_GE(approx_sum_grid(0.1, 0.01, 0.5), static_cast<std::uint64_t>(m));
}
