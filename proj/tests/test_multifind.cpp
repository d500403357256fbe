#include "qfind/counting.hpp"
#include "qfind/multifind.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace qfind;

namespace {

std::vector<Index> every_other(std::uint64_t n, std::uint64_t k, std::uint64_t offset = 3) {
    std::vector<Index> s;
    for (std::uint64_t j = 0; j < k; ++j) s.push_back(1 + (offset + j * (n / k)) % n);
    std::sort(s.begin(), s.end());
    return s;
}

} // namespace

TEST(CertaintyMultiple, EmptyString) {
    Rng rng(1);
    QueryLedger ledger;
    auto x = BitStringOracle::from_support(1024, std::vector<Index>{}, ledger);
    const auto r = grover_certainty_multiple(x, 3, rng);
    EXPECT_TRUE(r.found.empty());
    EXPECT_TRUE(r.success);
    EXPECT_LE(static_cast<double>(r.queries_used), 4.0 * std::sqrt(3.0 * 1024.0));
}

TEST(CertaintyMultiple, AllOnesOnFour) {
    Rng rng(2);
    for (int t = 0; t < 100; ++t) {
        QueryLedger ledger;
        auto x = BitStringOracle::from_bits("1111", ledger);
        const auto r = grover_certainty_multiple(x, 4, rng);
        EXPECT_EQ(r.found, (SortedIndexList{1, 2, 3, 4}));
    }
}

TEST(CertaintyMultiple, ExactAndSlackUpperBounds) {
    Rng rng(3);
    for (std::uint64_t k_ub : {16ULL, 20ULL})
        for (int t = 0; t < 2000; ++t) {
            QueryLedger ledger;
            auto x = BitStringOracle::from_support(256, every_other(256, 16, t), ledger);
            const auto r = grover_certainty_multiple(x, k_ub, rng);
            ASSERT_TRUE(r.success) << "k_ub=" << k_ub << " trial " << t;
            EXPECT_EQ(r.queries_used, ledger.oracle_queries);
        }
}

TEST(Coupon, SingleMarkedIndex) {
    Rng rng(4);
    int first_round = 0;
    const int trials = 3000;
    for (int t = 0; t < trials; ++t) {
        QueryLedger ledger;
        auto x = BitStringOracle::from_support(256, std::vector<Index>{77}, ledger);
        const auto r = grover_coupon(x, 50, 1, 1, rng);
        ASSERT_EQ(r.found, SortedIndexList{77});
        first_round += r.rounds == 1;
    }
    const double target = 2.0 / 3.0;
    EXPECT_GE(first_round / double(trials), target - 3 * std::sqrt(target * (1 - target) / trials));
}

TEST(Coupon, ReturnsOnlyMarkedIndices) {
    Rng rng(5);
    const auto support = every_other(1024, 12);
    for (int t = 0; t < 500; ++t) {
        QueryLedger ledger;
        auto x = BitStringOracle::from_support(1024, support, ledger);
        const auto r = grover_coupon(x, 40, 12, 6, rng);
        EXPECT_LE(r.found.size(), 6u);
        for (auto i : r.found) EXPECT_TRUE(x.bit(i));
    }
}

TEST(MultipleFast, StageOneRoundsFrozen) {
    // ceil(6 ln2 (t+1) + 2 ln(3/rho) / ln(3/2))
    EXPECT_EQ(stage1_rounds(10, 0.05), static_cast<std::uint64_t>(std::ceil(6 * std::log(2.0) * 11 +
                                                                            2 * std::log(60.0) / std::log(1.5))));
}

TEST(MultipleFast, RegimeAndLambdaStar) {
    EXPECT_FALSE(multiple_fast_regime(4, 0.05, 6));   // lambda > k
    EXPECT_FALSE(multiple_fast_regime(64, 0.05, 5));  // lambda < 6
    EXPECT_TRUE(multiple_fast_regime(256, 0.05, 6));
    EXPECT_NEAR(lambda_star(256, 0.05), std::min(256.0 / std::log2(6.0 * 256 / 0.05), std::pow(std::log2(256 / 0.05), 2)),
                1e-12);
}

TEST(MultipleFast, RejectsOutOfRegimeBeforeQuerying) {
    Rng rng(6);
    QueryLedger ledger;
    auto x = BitStringOracle::from_support(1024, every_other(1024, 4), ledger);
    EXPECT_THROW(grover_multiple_fast(x, 4, 0.05, 6, rng), std::invalid_argument);
    EXPECT_EQ(ledger.oracle_queries, 0u);
}

TEST(MultipleFast, FindsEverythingInRegime) {
    Rng rng(7);
    const int trials = 200;
    int failures = 0;
    for (int t = 0; t < trials; ++t) {
        QueryLedger ledger;
        auto x = BitStringOracle::from_support(4096, every_other(4096, 200, t), ledger);
        const auto r = grover_multiple_fast(x, 200, 0.1, 6, rng);
        failures += !r.success;
        for (auto i : r.found) ASSERT_TRUE(x.bit(i));
        EXPECT_FALSE(r.fallback);
        EXPECT_EQ(r.queries_used, ledger.oracle_queries);
    }
    EXPECT_LE(failures / double(trials), 0.1 + 3 * std::sqrt(0.1 * 0.9 / trials));
}

TEST(FindAllMarked, SmallWeightFallsBack) {
    Rng rng(8);
    QueryLedger ledger;
    auto x = BitStringOracle::from_support(256, std::vector<Index>{9, 200}, ledger);
    const auto r = find_all_marked(x, 2, 0.5, 6, rng);
    EXPECT_TRUE(r.fallback);
    EXPECT_TRUE(r.success);
}

TEST(FindAllMarked, ZeroEstimateReturnsEmpty) {
    Rng rng(9);
    QueryLedger ledger;
    auto x = BitStringOracle::from_support(256, std::vector<Index>{}, ledger);
    const auto r = find_all_marked(x, 0, 0.05, 0, rng);
    EXPECT_TRUE(r.found.empty());
    EXPECT_TRUE(r.success);
    EXPECT_EQ(ledger.oracle_queries, 0u);
}
