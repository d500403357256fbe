#pragma once

// Finding every marked element: repeated exact Grover with masking, the
// coupon-collector sampler, and the two-stage hybrid that combines them.

#include "qfind/config.hpp"
#include "qfind/oracle.hpp"
#include "qfind/rng.hpp"

#include <cstdint>

namespace qfind {

struct MultiFindResult {
    SortedIndexList found;
    std::uint64_t queries_used = 0;   // root-ledger queries
    std::uint64_t analytic_gates = 0; // root-ledger gates
    bool success = false;             // found equals the marked set
    std::uint64_t rounds = 0;         // coupon rounds (stage 1 for the hybrid)
    SortedIndexList stage1;           // hybrid only: the stage-1 sample
    bool fallback = false;            // find_all_marked ran the masking search
    double lambda = 0.0;              // lambda actually used by the hybrid
};

/// Exact Grover for m = k_ub, ..., 1, masking each verified hit. Finds every
/// marked element with certainty when |x| <= k_ub.
MultiFindResult grover_certainty_multiple(const BitStringOracle& oracle, std::uint64_t k_ub, Rng& rng,
                                          const Config& cfg = {});

/// Up to R rounds of the bounded search, each followed by one verification
/// query, collecting distinct hits until t have been found.
MultiFindResult grover_coupon(BitStringOracle& oracle, std::uint64_t rounds, std::uint64_t k_lb,
                              std::uint64_t t, Rng& rng, const Config& cfg = {});

/// Round budget of the hybrid's first stage: ceil(6 ln2 (t+1) + 2 ln(3/rho) / ln(3/2)).
std::uint64_t stage1_rounds(std::uint64_t t, double rho);

/// Whether (k_est, rho, lambda) satisfies 6 <= lambda <= k_est and
/// ceil(k_est/lambda) >= log2(6 k_est / rho).
bool multiple_fast_regime(std::uint64_t k_est, double rho, double lambda);

/// min{k_est / log2(6 k_est/rho), log2^2(k_est/rho)}; may fall below 6.
double lambda_star(std::uint64_t k_est, double rho);

/// Two-stage search: sample t = ceil(k_est/lambda) marked elements, then
/// count and exhaust each gap between consecutive samples. Throws
/// std::invalid_argument before any query when the regime does not hold.
MultiFindResult grover_multiple_fast(const BitStringOracle& oracle, std::uint64_t k_est, double rho,
                                     double lambda, Rng& rng, const Config& cfg = {});

/// Runs the hybrid when (k_est, rho, lambda) is in its regime and the
/// masking search with k_ub = 2 k_est otherwise. lambda <= 0 selects
/// lambda_star. k_est = 0 returns immediately.
MultiFindResult find_all_marked(const BitStringOracle& oracle, std::uint64_t k_est, double rho,
                                double lambda, Rng& rng, const Config& cfg = {});

} // namespace qfind
