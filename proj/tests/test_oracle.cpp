#include "qfind/oracle.hpp"
#include "qfind/oracle_io.hpp"

#include <gtest/gtest.h>

#include <sstream>
#include <stdexcept>
#include <vector>

using namespace qfind;

TEST(BitStringOracle, QueriesAndLedger) {
    QueryLedger ledger;
    auto x = BitStringOracle::from_bits("0001", ledger);
    EXPECT_TRUE(x.query(4));
    EXPECT_EQ(ledger.oracle_queries, 1u);
    EXPECT_FALSE(x.query(1));
    EXPECT_EQ(ledger.oracle_queries, 2u);
    EXPECT_EQ(x.weight(), 1u);
    EXPECT_EQ(x.support(), std::vector<Index>{4});
    EXPECT_THROW(x.query(0), std::out_of_range);
    EXPECT_THROW(x.query(5), std::out_of_range);
}

TEST(BitStringOracle, RejectsNonPowerOfTwo) {
    QueryLedger ledger;
    EXPECT_THROW(BitStringOracle::from_bits("010", ledger), std::invalid_argument);
}

TEST(MaskFound, ZeroesTheFoundSet) {
    QueryLedger ledger;
    auto x = BitStringOracle::from_bits("1111", ledger);
    auto z = mask_found(x, SortedIndexList{2, 3});
    EXPECT_EQ(z.bits(), "1001");
    // One root query plus |J| log2 N gates per application.
    z.query(1);
    EXPECT_EQ(ledger.oracle_queries, 1u);
    EXPECT_EQ(ledger.analytic_gates, 4u);
}

TEST(MaskFound, EmptySetIsFree) {
    QueryLedger ledger;
    auto x = BitStringOracle::from_bits("0001", ledger);
    auto z = mask_found(x, {});
    EXPECT_EQ(z.bits(), "0001");
    z.query(4);
    EXPECT_EQ(ledger.analytic_gates, 0u);
}

TEST(MaskFound, RejectsUnmarkedIndex) {
    QueryLedger ledger;
    auto x = BitStringOracle::from_bits("0101", ledger);
    EXPECT_THROW(mask_found(x, SortedIndexList{1}), std::invalid_argument);
}

TEST(RestrictInterval, ReindexesTheOpenInterval) {
    QueryLedger ledger;
    auto x = BitStringOracle::from_bits("01100101", ledger);
    auto y = restrict_interval(x, 2, 7);
    EXPECT_EQ(y.size(), 4u);
    EXPECT_EQ(y.support(), (std::vector<Index>{1, 4}));
    y.query(1);
    EXPECT_EQ(ledger.analytic_gates, 3u);
}

TEST(RestrictInterval, WholeRangeKeepsTheSupport) {
    QueryLedger ledger;
    auto x = BitStringOracle::from_bits("01100101", ledger);
    auto y = restrict_interval(x, 0, 9);
    EXPECT_EQ(y.size(), 8u);
    EXPECT_EQ(y.support(), x.support());
}

TEST(RestrictInterval, EmptyIntervalContents) {
    QueryLedger ledger;
    auto x = BitStringOracle::from_bits("10000001", ledger);
    EXPECT_EQ(restrict_interval(x, 1, 8).weight(), 0u);
    EXPECT_THROW(restrict_interval(x, 3, 4), std::invalid_argument);
}

TEST(ThresholdOracle, FrozenExamples) {
    QueryLedger ledger;
    const std::vector<double> vals{0.25, 0.75};
    auto v = FixedVector::from_values(vals, 8, ledger);
    EXPECT_EQ(threshold_oracle(v, ThresholdKey::at_value(FixedVector::to_raw(0.5, 8))).bits(), "01");
    EXPECT_EQ(threshold_oracle(v, ThresholdKey::at_value(0)).bits(), "11");
    auto t = threshold_oracle(v, ThresholdKey::at_value(1));
    t.query(1);
    EXPECT_EQ(ledger.oracle_queries, 2u);
    EXPECT_EQ(ledger.analytic_gates, 8u);
}

TEST(ThresholdKey, TieBreakByIndex) {
    QueryLedger ledger;
    FixedVector v(std::vector<std::uint64_t>{3, 3, 3, 3}, 2, ledger);
    const auto z = v.key(2);
    EXPECT_EQ(threshold_oracle(v, z).bits(), "0111");
    EXPECT_EQ(threshold_oracle(v, z.successor()).bits(), "0011");
}

TEST(FixedVector, RoundingAndSaturation) {
    EXPECT_EQ(FixedVector::to_raw(0.5, 4), 8u);
    EXPECT_EQ(FixedVector::to_raw(1.0, 4), 15u);
    EXPECT_EQ(FixedVector::to_raw(0.0, 4), 0u);
    EXPECT_EQ(FixedVector::to_raw(0.03, 4), 0u);
    EXPECT_EQ(FixedVector::to_raw(0.04, 4), 1u);
}

TEST(RescaledAmplitude, AboveThresholdContributesNothing) {
    QueryLedger ledger;
    FixedVector v(std::vector<std::uint64_t>{200, 220, 250, 255}, 8, ledger);
    EXPECT_DOUBLE_EQ(rescaled_amplitude(v, ThresholdKey::at_value(100), 0.1), 0.0);
}

TEST(RescaledAmplitude, HalfOfThresholdGivesOneHalf) {
    QueryLedger ledger;
    const double delta = 0.05;
    FixedVector v(std::vector<std::uint64_t>(8, 50), 8, ledger);
    const double tol = delta / 32.0 + (delta / 32.0) * (delta / 32.0);
    EXPECT_NEAR(rescaled_amplitude(v, ThresholdKey::at_value(100), delta), 0.5, tol);
}

TEST(OracleIo, ReadsBitsAndVectors) {
    std::istringstream bits("# comment\n0\n1\n\n1\n0\n");
    EXPECT_EQ(read_bits(bits), "0110");
    std::istringstream vec("0.5\n0b11\n# c\n0\n0.25\n");
    EXPECT_EQ(read_vector(vec, 4), (std::vector<std::uint64_t>{8, 12, 0, 4}));
    std::istringstream bad("2\n");
    EXPECT_THROW(read_bits(bad), std::runtime_error);
}
