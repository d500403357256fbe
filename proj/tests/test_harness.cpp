#include "qfind/counting.hpp"
#include "qfind/harness/csv.hpp"
#include "qfind/harness/stats.hpp"
#include "qfind/harness/sweep.hpp"
#include "qfind/harness/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

using namespace qfind;
using namespace qfind::harness;

namespace {

TrialRecord sample_record() {
    TrialRecord r;
    r.algorithm = "approx_sum";
    r.n = 4096;
    r.k = 12;
    r.rho = 0.05;
    r.delta = 0.1;
    r.lambda = 6;
    r.p = 1.0 / 409.6;
    r.trial = 3;
    r.seed = 0xfedcba9876543210ULL;
    r.queries = 123456;
    r.analytic_gates = 98765;
    r.success = true;
    r.value = 2047.123456789;
    r.error = 0.0123;
    return r;
}

std::string sweep_csv(const SweepSpec& spec) {
    std::ostringstream os;
    CsvWriter w(os);
    run_trials(spec, [&](const TrialRecord& r) { w.write(r); });
    return os.str();
}

} // namespace

TEST(Csv, EmptyStreamIsHeaderOnly) {
    std::ostringstream os;
    write_csv(os, {});
    EXPECT_EQ(os.str(), std::string(kCsvHeader) + "\n");
}

TEST(Csv, OneRecordIsTwoLines) {
    std::ostringstream os;
    const auto r = sample_record();
    write_csv(os, std::span(&r, 1));
    const auto s = os.str();
    EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 2);
}

TEST(Csv, RoundTrip) {
    std::vector<TrialRecord> records{sample_record(), sample_record()};
    records[1].algorithm = "odd, \"name\"\nwith newline";
    records[1].k.reset();
    records[1].lambda.reset();
    records[1].value = 1e-300;
    records[1].error.reset();
    std::stringstream ss;
    write_csv(ss, records);
    EXPECT_EQ(read_csv(ss), records);
}

TEST(Csv, Quoting) {
    EXPECT_EQ(csv_quote("plain"), "plain");
    EXPECT_EQ(csv_quote("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_quote("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(Csv, RejectsWrongHeader) {
    std::istringstream in("algorithm,N\nx,1\n");
    EXPECT_THROW(read_csv(in), std::runtime_error);
}

TEST(Stats, RateBands) {
    const auto ok = rate_at_least(95, 100, 0.95);
    EXPECT_TRUE(ok.pass);
    EXPECT_NEAR(ok.sigma, std::sqrt(0.95 * 0.05 / 100), 1e-15);
    EXPECT_FALSE(rate_at_least(80, 100, 0.95).pass);
    EXPECT_TRUE(rate_at_most(6, 100, 0.05).pass);
    EXPECT_FALSE(rate_at_most(20, 100, 0.05).pass);
}

TEST(Stats, LogLogFitRecoversPowerLaw) {
    std::vector<double> x{1, 2, 4, 8, 16}, y;
    for (double v : x) y.push_back(3.0 * std::pow(v, 0.5));
    const auto f = loglog_fit(x, y);
    EXPECT_NEAR(f.slope, 0.5, 1e-12);
    EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
}

TEST(Stats, ChiSquareUniform) {
    const std::vector<std::uint64_t> flat{100, 100, 100, 100};
    EXPECT_NEAR(chi_square_uniform(flat).p_value, 1.0, 1e-12);
    const std::vector<std::uint64_t> skewed{400, 0, 0, 0};
    EXPECT_LT(chi_square_uniform(skewed).p_value, 1e-10);
}

TEST(Stats, IndependenceAndMutualInformation) {
    const std::vector<std::uint64_t> independent{50, 50, 50, 50};
    EXPECT_NEAR(g_test_independence(independent, 2, 2).statistic, 0.0, 1e-12);
    EXPECT_NEAR(mutual_information(independent, 2, 2), 0.0, 1e-12);
    const std::vector<std::uint64_t> dependent{100, 0, 0, 100};
    EXPECT_NEAR(mutual_information(dependent, 2, 2), std::log(2.0), 1e-12);
}

TEST(SweepSpec, ParsesGridsAndAuto) {
    std::istringstream in("# comment\nalgorithm = multiple_fast\nn = 1024\nk = 4, 16\nlambda = auto, 6\n"
                          "trials = 3\nseed = 9\n");
    const auto spec = parse_sweep_spec(in);
    EXPECT_EQ(spec.k, (std::vector<std::uint64_t>{4, 16}));
    ASSERT_EQ(spec.lambda.size(), 2u);
    EXPECT_FALSE(spec.lambda[0]);
    EXPECT_EQ(*spec.lambda[1], 6.0);
    EXPECT_EQ(expand_cells(spec).size(), 4u);
}

TEST(SweepSpec, RejectsBadInput) {
    std::istringstream unknown("algorithm = nope\n");
    EXPECT_THROW(parse_sweep_spec(unknown), std::runtime_error);
    std::istringstream zero("algorithm = count\ntrials = 0\n");
    EXPECT_THROW(parse_sweep_spec(zero), std::runtime_error);
    std::istringstream empty_grid("algorithm = count\nk = 1,,2\n");
    EXPECT_THROW(parse_sweep_spec(empty_grid), std::runtime_error);
}

TEST(Sweep, OneCellOneTrialPopulatesEveryField) {
    SweepSpec spec;
    spec.algorithm = "approx_sum";
    spec.n = {256};
    spec.trials = 1;
    std::vector<TrialRecord> out;
    const auto summary = run_trials(spec, [&](const TrialRecord& r) { out.push_back(r); });
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(summary.records, 1u);
    const auto& r = out[0];
    EXPECT_TRUE(r.k && r.rho && r.delta && r.lambda && r.p && r.value && r.error);
    EXPECT_GT(r.queries, 0u);
}

TEST(Sweep, SameSpecGivesByteIdenticalCsv) {
    SweepSpec spec;
    spec.algorithm = "multiple_fast";
    spec.n = {4096};
    spec.k = {2, 200};
    spec.trials = 6;
    spec.seed = 17;
    const auto a = sweep_csv(spec);
    EXPECT_EQ(a, sweep_csv(spec));
    EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 13);
    spec.seed = 18;
    EXPECT_NE(a, sweep_csv(spec));
}

TEST(Sweep, RecordMatchesItsLedger) {
    // Re-running one trial by hand reproduces the reported query count.
    const Cell cell{"count", 1024, 10, 0.05, 0.1, std::nullopt, std::nullopt};
    const auto seed = trial_seed(5, 0, 0);
    const auto r = run_trial(cell, 0, seed, Config{});
    EXPECT_EQ(r, run_trial(cell, 0, seed, Config{}));

    Rng inst(derive_seed(seed, 1)), rng(seed);
    QueryLedger ledger;
    auto x = BitStringOracle::from_support(1024, random_support(1024, 10, inst), ledger);
    const auto e = estimate_k_32(x, 0.05, rng);
    EXPECT_EQ(r.queries, ledger.oracle_queries);
    EXPECT_EQ(*r.value, e.value);
}

TEST(Sweep, InvalidCellIsReportedWithoutAborting) {
    SweepSpec spec;
    spec.algorithm = "count";
    spec.n = {64};
    spec.k = {100, 4};  // the first cell cannot exist
    spec.trials = 2;
    std::uint64_t seen = 0;
    const auto summary = run_trials(spec, [&](const TrialRecord&) { ++seen; });
    EXPECT_EQ(summary.cell_errors.size(), 1u);
    EXPECT_EQ(seen, 2u);
}

TEST(Sweep, RandomSupportIsUniformSubset) {
    Rng rng(3);
    std::vector<int> hits(16);
    const int draws = 20000;
    for (int d = 0; d < draws; ++d) {
        const auto s = random_support(16, 4, rng);
        ASSERT_EQ(s.size(), 4u);
        ASSERT_TRUE(std::is_sorted(s.begin(), s.end()));
        ASSERT_EQ(std::adjacent_find(s.begin(), s.end()), s.end());
        for (auto i : s) ++hits[i - 1];
    }
    std::vector<std::uint64_t> counts(hits.begin(), hits.end());
    EXPECT_GT(chi_square_uniform(counts).p_value, 1e-4);
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
    std::vector<int> seen(1000, 0);
    parallel_for(seen.size(), 4, [&](std::size_t i) { ++seen[i]; });
    EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](int v) { return v == 1; }));
}

TEST(Verify, QuickSuitesPass) {
    VerifyOptions o;
    o.trials = 200;
    for (const char* s : {"harmonic", "tails", "run_length", "grover_exact", "ampest"}) {
        const auto report = verify_bounds(s, o);
        EXPECT_TRUE(report.pass()) << s;
        for (const auto& c : report.checks) EXPECT_FALSE(c.detail.empty()) << s << ": " << c.name;
    }
    EXPECT_THROW(verify_bounds("nope", o), std::invalid_argument);
}
