#pragma once

// Amplitude estimation and the estimators built on it: approximate
// counting, the factor-3/2 weight estimate and the multiplicative mean
// estimator used as the summing baseline.

#include "qfind/config.hpp"
#include "qfind/oracle.hpp"
#include "qfind/rng.hpp"

#include <cstdint>

namespace qfind {

struct AmpEstimate {
    double value = 0.0;      // sin^2(pi * y / grid)
    std::uint64_t grid = 2;  // power-of-two number of phase-estimation points
    std::uint64_t outcome = 0;
};

/// Phase-estimation grid used for a requested M: the next power of two, at least 2.
std::uint64_t amp_est_grid(std::uint64_t m);

/// Samples the estimate for marked weight `a` without touching any ledger.
AmpEstimate amp_est_sample(double a, std::uint64_t m, Rng& rng);

/// Amplitude estimation of |x|/N: grid controlled applications of the
/// search iterate and as many of its inverse, i.e. 2*grid oracle queries.
AmpEstimate amp_est(BitStringOracle& oracle, std::uint64_t m, Rng& rng);

/// A state-preparation circuit whose good-subspace weight is `amplitude`.
/// One preparation uses `queries_per_prep` oracle queries and acts on `qubits` qubits.
struct AmplitudeSource {
    double amplitude = 0.0;
    std::uint64_t queries_per_prep = 1;
    std::uint64_t qubits = 1;
    std::uint64_t c_gate = 1;
};

AmpEstimate amp_est(const AmplitudeSource& source, QueryLedger& ledger, std::uint64_t m, Rng& rng);

/// Odd repetition count 2*ceil(median_factor * ln(1/rho)) + 1 for median boosting.
std::uint64_t median_repetitions(double rho, const Config& cfg = {});

struct CountEstimate {
    double value = 0.0;
    std::uint64_t queries_used = 0;
    double confidence = 1.0;
};

/// Estimate of k = |x| with |k~ - k| <= eps*k with probability >= 1 - rho;
/// exactly 0 when x has no marked element. Requires 1/(3N) < eps <= 1.
CountEstimate approx_count(BitStringOracle& oracle, double eps, double rho, Rng& rng,
                           const Config& cfg = {});

/// One unboosted counting run; within a factor (1 +- eps) of k with
/// probability above 8/pi^2.
CountEstimate approx_count_once(BitStringOracle& oracle, double eps, Rng& rng, const Config& cfg = {});

/// approx_count with eps = 1/2: k/2 <= k_est <= 3k/2 with probability >= 1 - rho.
CountEstimate estimate_k_32(BitStringOracle& oracle, double rho, Rng& rng, const Config& cfg = {});

struct MeanEstimate {
    double value = 0.0;
    std::uint64_t queries_used = 0;
    Index argmax = 1;
};

/// Multiplicative delta-approximation of the mean of v with probability >= 1 - rho.
MeanEstimate mean_estimate_baseline(FixedVector& v, double delta, double rho, Rng& rng,
                                    const Config& cfg = {});

/// Grid requested by mean_estimate_baseline: 8*sqrt(N)/delta.
std::uint64_t baseline_grid(std::uint64_t n, double delta);

} // namespace qfind
