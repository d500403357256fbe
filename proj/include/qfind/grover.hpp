#pragma once

// Single-element search: exact Grover, expected-time Grover, the bounded
// search with a lower bound on the number of marked elements, and maximum
// finding.

#include "qfind/config.hpp"
#include "qfind/oracle.hpp"
#include "qfind/rng.hpp"

#include <cstdint>
#include <optional>

namespace qfind {

/// `queries_used` counts applications of the oracle handed to the search;
/// the root ledger receives that count times the oracle's cost.
struct SearchOutcome {
    std::optional<Index> index;
    std::uint64_t queries_used = 0;
    bool verified = false;
    bool cap_exhausted = false;
};

/// Iteration count and amplitude reduction that make Grover exact for k0 of N.
struct ExactSchedule {
    std::uint64_t iterations = 0;
    double amp_scale = 1.0;
};
ExactSchedule exact_grover_schedule(std::uint64_t n, std::uint64_t k0);

/// Exact Grover assuming k0 marked elements, followed by one verification
/// query. Returns the measured index; `verified` tells whether it is marked.
SearchOutcome grover_certainty(BitStringOracle& oracle, std::uint64_t k0, Rng& rng,
                               const Config& cfg = {});

/// Expected-time search with geometrically growing iteration budgets. Gives
/// up once the next round would take the total past `hard_cap` applications
/// (0 selects the default cap of hard_cap_factor * sqrt(N)).
SearchOutcome grover_expectation(BitStringOracle& oracle, Rng& rng, std::uint64_t hard_cap = 0,
                                 const Config& cfg = {});

/// Query cap floor(C * sqrt(N / k_lb)) of the bounded search.
std::uint64_t grover_23_cap(std::uint64_t n, std::uint64_t k_lb, const Config& cfg = {});

/// Expected-time search truncated at grover_23_cap; finds a marked index
/// with probability >= 2/3 whenever k_lb <= |x|.
SearchOutcome grover_23(BitStringOracle& oracle, std::uint64_t k_lb, Rng& rng,
                        const Config& cfg = {});

struct MaxFindResult {
    Index index = 1;
    std::uint64_t queries = 0;  // vector queries
};

/// Maximum finding over the (value, index) order within maxfind_budget *
/// sqrt(N) vector queries; returns the argmax with probability >= 1/2.
MaxFindResult max_find(FixedVector& v, Rng& rng, const Config& cfg = {});

/// Best of ceil(log2(1/rho)) runs of max_find.
MaxFindResult max_find_boosted(FixedVector& v, double rho, Rng& rng, const Config& cfg = {});

} // namespace qfind
