#pragma once

// Classical companions of the algorithms: harmonic numbers, geometric tail
// thresholds, coupon-collector round budgets, run-length probabilities and
// the theoretical query budgets used for scaling fits.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qfind::analysis {

inline constexpr long double kEulerGamma = 0.57721566490153286061L;

/// H_k = sum_{j<=k} 1/j with H_0 = 0, by compensated summation.
long double harmonic(std::uint64_t k);

/// H_0, ..., H_kmax.
std::vector<long double> harmonic_table(std::uint64_t kmax);

/// The three harmonic-number brackets. Checks whose hypothesis does not hold
/// for (k, t) are reported as true.
struct HarmonicChecks {
    bool euler = true;   // H_k - gamma - ln k in [1/(2(k+1)), 1/(2k)]
    bool log_gap = true; // t < k: H_k - H_{k-t} <= ln(k/(k-t)) + (2k-t+1)/(2k(k-t+1))
    bool linear = true;  // t <= k/2: H_k - H_{k-t} <= 2(t+1)/k
    bool all() const { return euler && log_gap && linear; }
};
HarmonicChecks harmonic_bounds_check(std::uint64_t k, std::uint64_t t);
/// Same checks with H_k and H_{k-t} supplied by the caller.
HarmonicChecks harmonic_bounds_check(std::uint64_t k, std::uint64_t t, long double h_k, long double h_k_minus_t);

/// T = 2 ln2 mu + 2 ln(1/rho) / ln(1/(1-p_star)); a sum of independent
/// geometric variables with mean mu and success probabilities >= p_star
/// exceeds T with probability <= rho. rho = 1 or p_star = 1 drop the second term.
double geo_tail_threshold(double mu, double p_star, double rho);

/// R = 3 ln2 k (H_k - H_{k-t}) + 2 ln(1/rho) / ln(3k / (k + 2(t-1))).
double coupon_budget(std::uint64_t t, std::uint64_t k, double rho);

/// (k - ell + 1)(1 - t/k)^ell, bounding the probability that the complement
/// of a uniform t-subset of [k] contains ell consecutive elements.
double run_length_bound(std::uint64_t k, std::uint64_t t, std::uint64_t ell);

/// That probability exactly, counting gap compositions by dynamic programming.
double run_probability_exact(std::uint64_t k, std::uint64_t t, std::uint64_t ell);

struct BudgetParams {
    double n = 0;
    double k = 0;       // marked count (k_ub for certainty_multiple, k for coupon)
    double k_lb = 1;
    double t = 1;
    double rho = 0.5;
    double lambda = 6;
    double eps = 0.5;
    double m = 1;       // amplitude-estimation grid
    double qubits = 1;
    double delta = 0.5;
    double p = 0.5;
    double bits = 32;
};

struct Budget {
    double queries = 0;
    double gates = 0;
    std::string label;
};

/// Theoretical cost with unit constants for one of: grover23,
/// certainty_multiple, coupon, multiple_fast, approx_count, amp_est, approx_sum.
Budget query_budget(const std::string& label, const BudgetParams& params);

} // namespace qfind::analysis
