#pragma once

// Statistical decision rules used by the verification suites. Every check
// carries its sample size and band so reports never show a bare verdict.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qfind::harness {

/// Empirical rate compared against a target with a 3-sigma binomial band,
/// sigma = sqrt(target (1 - target) / trials).
struct RateCheck {
    std::uint64_t hits = 0;
    std::uint64_t trials = 0;
    double rate = 0.0;
    double target = 0.0;
    double sigma = 0.0;
    bool at_least = true;  // true: rate >= target - 3 sigma; false: rate <= target + 3 sigma
    bool pass = false;

    std::string describe() const;
};

RateCheck rate_at_least(std::uint64_t hits, std::uint64_t trials, double target);
RateCheck rate_at_most(std::uint64_t hits, std::uint64_t trials, double target);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t points = 0;
};

/// Ordinary least squares of y on x.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

/// Least squares of log(y) on log(x).
LinearFit loglog_fit(std::span<const double> x, std::span<const double> y);

struct ChiSquare {
    double statistic = 0.0;
    double dof = 0.0;
    double p_value = 1.0;
};

/// Goodness of fit of `counts` against the uniform distribution.
ChiSquare chi_square_uniform(std::span<const std::uint64_t> counts);

/// G-test of independence on a rows x cols contingency table (row-major).
/// Rows or columns with zero total are dropped before counting the degrees of freedom.
ChiSquare g_test_independence(std::span<const std::uint64_t> table, std::size_t rows, std::size_t cols);

/// Plug-in mutual information (nats) of a contingency table.
double mutual_information(std::span<const std::uint64_t> table, std::size_t rows, std::size_t cols);

} // namespace qfind::harness
