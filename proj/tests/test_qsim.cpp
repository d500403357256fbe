#include "qfind/qsim.hpp"
#include "qfind/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace qfind;

TEST(Rng, SameSeedSameStream) {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(Rng, BelowStaysInRange) {
    Rng r(7);
    for (std::uint64_t n : {1ULL, 2ULL, 3ULL, 10ULL, 1000003ULL, 1ULL << 40})
        for (int i = 0; i < 1000; ++i) EXPECT_LT(r.below(n), n);
}

TEST(Rng, DeriveSeedSeparatesStreams) {
    EXPECT_NE(derive_seed(1, 0, 0), derive_seed(1, 0, 1));
    EXPECT_NE(derive_seed(1, 0, 1), derive_seed(1, 1, 0));
    EXPECT_EQ(derive_seed(9, 3, 4), derive_seed(9, 3, 4));
}

TEST(Rng, SplitDoesNotAdvanceParent) {
    Rng a(5), b(5);
    (void)a.split(1);
    EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(GroverSuccessProb, FrozenValues) {
    EXPECT_NEAR(grover_success_prob(4, 1, 1), 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(grover_success_prob(64, 0, 5), 0.0);
    EXPECT_DOUBLE_EQ(grover_success_prob(64, 64, 0), 1.0);
    // sin^2(3 arcsin(1/4)) for N = 16, k = 1, one iterate.
    EXPECT_NEAR(grover_success_prob(16, 1, 1), std::pow(std::sin(3.0 * std::asin(0.25)), 2), 1e-12);
}

TEST(DenseState, OneIterateOnFourFindsTheMarkedIndex) {
    auto s = DenseState::uniform(4);
    const std::vector<std::uint64_t> marked{2};  // index 3 in 1-based terms
    apply_grover_iterate(s, marked);
    EXPECT_NEAR(std::norm(s.amplitudes()[2]), 1.0, 1e-12);
}

TEST(DenseState, EmptyMarkedSetLeavesUniformStateUnchanged) {
    auto s = DenseState::uniform(8);
    const auto before = std::vector(s.amplitudes().begin(), s.amplitudes().end());
    apply_grover_iterate(s, {});
    for (std::size_t i = 0; i < before.size(); ++i) EXPECT_NEAR(std::abs(s.amplitudes()[i] - before[i]), 0.0, 1e-12);
}

TEST(DenseState, IteratesPreserveNorm) {
    auto s = DenseState::uniform(32);
    const std::vector<std::uint64_t> marked{1, 7, 30};
    for (int i = 0; i < 10; ++i) {
        apply_grover_iterate(s, marked);
        EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
    }
}

// The rotation picture and the state vector agree on every small instance.
TEST(Backends, RotationMatchesDenseOnAGrid) {
    Rng rng(3);
    for (std::uint64_t n : {2ULL, 4ULL, 8ULL, 32ULL, 128ULL})
        for (std::uint64_t k = 0; k <= n; k += std::max<std::uint64_t>(1, n / 7))
            for (std::uint64_t it : {0ULL, 1ULL, 2ULL, 5ULL})
                for (double scale : {1.0, 0.37}) {
                    std::vector<std::uint64_t> marked;
                    for (std::uint64_t p = 0; p < n && marked.size() < k; p += std::max<std::uint64_t>(1, n / (k + 1)))
                        marked.push_back(p);
                    const double rot = grover_success_prob(n, marked.size(), it, scale);
                    EXPECT_NEAR(dense_success_prob(n, marked, it, scale), rot, 1e-9)
                        << "n=" << n << " k=" << marked.size() << " it=" << it << " scale=" << scale;
                }
}

TEST(Measure, FullyGoodStateIsUniformOverMarked) {
    Rng rng(11);
    const std::vector<std::uint64_t> marked{1, 4};  // indices 2 and 5
    auto st = RotationState::prepare(8, 2);
    st.good_amp = 1.0;
    int first = 0;
    const int shots = 20000;
    for (int i = 0; i < shots; ++i) {
        const auto s = measure_index(st, marked, rng);
        ASSERT_TRUE(s.good);
        ASSERT_TRUE(s.position == 1 || s.position == 4);
        first += s.position == 1;
    }
    // 3 sigma band around 1/2.
    EXPECT_NEAR(first / double(shots), 0.5, 3.0 * std::sqrt(0.25 / shots));
}

TEST(Measure, ZeroGoodAmplitudeNeverReturnsMarked) {
    Rng rng(12);
    const std::vector<std::uint64_t> marked{0, 3, 5};
    auto st = RotationState::prepare(8, 3);
    st.good_amp = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const auto s = measure_index(st, marked, rng);
        EXPECT_FALSE(s.good);
        EXPECT_NE(s.position, 0u);
        EXPECT_NE(s.position, 3u);
        EXPECT_NE(s.position, 5u);
    }
}

TEST(Measure, DenseUniformOnFour) {
    Rng rng(13);
    auto s = DenseState::uniform(4);
    std::vector<int> counts(4);
    const int shots = 40000;
    for (int i = 0; i < shots; ++i) ++counts[measure_index(s, {}, rng).position];
    for (int c : counts) EXPECT_NEAR(c / double(shots), 0.25, 3.0 * std::sqrt(0.25 * 0.75 / shots));
}

TEST(Qpe, DistributionSumsToOne) {
    for (double a : {0.0, 0.01, 0.3, 0.5, 0.77, 1.0})
        for (std::uint64_t m : {2ULL, 8ULL, 64ULL}) {
            double total = 0.0;
            for (std::uint64_t y = 0; y < m; ++y) total += qpe_outcome_probability(a, m, y);
            EXPECT_NEAR(total, 1.0, 1e-9) << "a=" << a << " m=" << m;
        }
}

TEST(Qpe, ZeroAmplitudeIsExact) {
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) EXPECT_EQ(qpe_outcome_sample(0.0, 64, rng), 0u);
}

TEST(Qpe, OnGridAmplitudeIsExact) {
    Rng rng(2);
    const double a = std::pow(std::sin(std::numbers::pi * 3.0 / 16.0), 2);
    for (int i = 0; i < 1000; ++i) EXPECT_NEAR(qpe_estimate(qpe_outcome_sample(a, 16, rng), 16), a, 1e-12);
}

TEST(Qpe, SamplerMatchesExactDistribution) {
    Rng rng(5);
    const double a = 0.3;
    const std::uint64_t m = 16;
    std::vector<int> counts(m);
    const int shots = 50000;
    for (int i = 0; i < shots; ++i) ++counts[qpe_outcome_sample(a, m, rng)];
    for (std::uint64_t y = 0; y < m; ++y) {
        const double p = qpe_outcome_probability(a, m, y);
        EXPECT_NEAR(counts[y] / double(shots), p, 4.0 * std::sqrt(p * (1 - p) / shots) + 1e-4) << "y=" << y;
    }
}

TEST(PhaseKernel, IntegerOffsetsGiveOne) {
    EXPECT_DOUBLE_EQ(phase_kernel(8, 0.0), 1.0);
    EXPECT_NEAR(phase_kernel(8, 1.0), 1.0, 1e-12);
    EXPECT_NEAR(phase_kernel(8, 0.125), 0.0, 1e-12);
}

TEST(NthUnmarked, SkipsMarkedPositions) {
    const std::vector<std::uint64_t> marked{0, 2, 3, 7};
    const std::vector<std::uint64_t> expected{1, 4, 5, 6, 8, 9};
    for (std::uint64_t r = 0; r < expected.size(); ++r) EXPECT_EQ(nth_unmarked(marked, r), expected[r]);
}
