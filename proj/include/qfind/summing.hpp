#pragma once

// Quantile estimation and the hybrid multiplicative approximation of a
// vector sum: large entries are found and added classically, the rest is
// estimated by amplitude estimation on the rescaled tail.

#include "qfind/config.hpp"
#include "qfind/oracle.hpp"
#include "qfind/rng.hpp"

#include <cstdint>

namespace qfind {

/// Entries with (value, index) key >= z; this is the rank of z when z is an entry's key.
std::uint64_t rank_of(const FixedVector& v, ThresholdKey z);

/// Ground-truth p-quantile: key of the ceil(pN)-th largest entry.
ThresholdKey quantile_key(const FixedVector& v, double p);

struct QuantileResult {
    ThresholdKey key;
    double value = 0.0;
    std::uint64_t queries_used = 0;
    std::uint64_t steps = 0;
    bool converged = false;
};

/// Rank window accepted by quantile_estimate: estimates in [low, high]
/// certify a true rank in [ceil(c p N), ceil(p N)] when the count is
/// within a factor (1 +- eps).
struct RankWindow {
    std::uint64_t rank_lo = 1, rank_hi = 1;
    std::uint64_t low = 1, high = 1;
    double eps = 0.25;
};
RankWindow quantile_window(std::uint64_t n, double p, double c);

/// With probability >= 1 - rho returns a key between the p- and the
/// (c p)-quantile. Requires p N >= 1.
QuantileResult quantile_estimate(FixedVector& v, double p, double rho, Rng& rng, const Config& cfg = {});

enum class SumBranch { classical_only, hybrid };

struct SumEstimate {
    double value = 0.0;
    std::uint64_t queries_used = 0;
    std::uint64_t analytic_gates = 0;
    SumBranch branch = SumBranch::classical_only;
    double classical_part = 0.0;
    double amp_part = 0.0;
    ThresholdKey threshold;
    double threshold_value = 0.0;
    std::uint64_t k_est = 0;
    std::uint64_t found = 0;
    bool found_all = false;  // ground truth: every entry above the threshold was found
    bool fallback = false;   // the masking search replaced the hybrid finder
    bool regime_ok = false;  // lambda within the range the guarantee assumes
    double amplitude = 0.0;  // rescaled tail weight fed to amplitude estimation
    double amp_estimate = 0.0;
};

/// Grid requested for the tail estimate: 12 pi / sqrt(delta^2 p c).
std::uint64_t approx_sum_grid(double delta, double p, double c);

/// Multiplicative delta-approximation of sum(v) with probability >= 1 - rho.
/// Requires lambda >= 6; the upper end of the lambda range is reported in
/// `regime_ok` rather than enforced.
SumEstimate approx_sum(FixedVector& v, double delta, double p, double lambda, double rho, Rng& rng,
                       const Config& cfg = {});

enum class ParamMode { query_optimal, simple };

struct SumParams {
    double p = 0.5;
    double lambda = 6.0;
    bool in_regime = true;
};

/// Parameter rules for approx_sum. p is clamped to [1/N, 1/2]; in_regime is
/// false when a clamp was needed or lambda's range is empty.
SumParams choose_params(std::uint64_t n, double delta, double rho, ParamMode mode, const Config& cfg = {});

} // namespace qfind
