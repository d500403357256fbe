#include "qfind/counting.hpp"

#include "qfind/grover.hpp"
#include "qfind/qsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qfind {

namespace {

void check_rho(double rho) {
    if (!(rho > 0.0 && rho < 1.0)) throw std::domain_error("rho must lie in (0, 1)");
}

double median_of(std::vector<double>& xs) {
    const auto mid = xs.begin() + static_cast<std::ptrdiff_t>(xs.size() / 2);
    std::nth_element(xs.begin(), mid, xs.end());
    return *mid;
}

// One unboosted counting run: detect a nonzero estimate on doubling grids,
// then estimate once more on a grid count_refine/eps times finer.
double count_once(BitStringOracle& oracle, double eps, Rng& rng, const Config& cfg) {
    const std::uint64_t n = oracle.size();
    std::uint64_t m = 2;
    for (;;) {
        if (amp_est(oracle, m, rng).value > 0.0) break;
        if (m * m >= 4 * n) return 0.0;
        m *= 2;
    }
    const auto fine = static_cast<std::uint64_t>(std::ceil(cfg.count_refine * static_cast<double>(m) / eps));
    const double a = amp_est(oracle, fine, rng).value;
    return std::clamp(std::round(static_cast<double>(n) * a), 0.0, static_cast<double>(n));
}

} // namespace

std::uint64_t amp_est_grid(std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("amplitude estimation needs M >= 1");
    return std::max<std::uint64_t>(2, std::bit_ceil(m));
}

AmpEstimate amp_est_sample(double a, std::uint64_t m, Rng& rng) {
    AmpEstimate e;
    e.grid = amp_est_grid(m);
    e.outcome = qpe_outcome_sample(a, e.grid, rng);
    e.value = qpe_estimate(e.outcome, e.grid);
    return e;
}

AmpEstimate amp_est(BitStringOracle& oracle, std::uint64_t m, Rng& rng) {
    const double a = static_cast<double>(oracle.weight()) / static_cast<double>(oracle.size());
    auto e = amp_est_sample(a, m, rng);
    oracle.charge(2 * e.grid);
    oracle.ledger().charge(0, oracle.c_gate() * oracle.log2_size() * e.grid);
    return e;
}

AmpEstimate amp_est(const AmplitudeSource& source, QueryLedger& ledger, std::uint64_t m, Rng& rng) {
    auto e = amp_est_sample(source.amplitude, m, rng);
    ledger.charge(2 * e.grid * source.queries_per_prep, source.c_gate * source.qubits * e.grid);
    return e;
}

std::uint64_t median_repetitions(double rho, const Config& cfg) {
    check_rho(rho);
    return 2 * static_cast<std::uint64_t>(std::ceil(cfg.median_factor * std::log(1.0 / rho))) + 1;
}

CountEstimate approx_count(BitStringOracle& oracle, double eps, double rho, Rng& rng, const Config& cfg) {
    const double n = static_cast<double>(oracle.size());
    if (!(eps > 1.0 / (3.0 * n) && eps <= 1.0)) throw std::domain_error("eps must lie in (1/(3N), 1]");
    const auto reps = median_repetitions(rho, cfg);
    const std::uint64_t start = oracle.ledger().oracle_queries;
    std::vector<double> runs;
    runs.reserve(reps);
    for (std::uint64_t r = 0; r < reps; ++r) runs.push_back(count_once(oracle, eps, rng, cfg));
    CountEstimate out;
    out.value = median_of(runs);
    out.queries_used = oracle.ledger().oracle_queries - start;
    out.confidence = 1.0 - rho;
    return out;
}

CountEstimate approx_count_once(BitStringOracle& oracle, double eps, Rng& rng, const Config& cfg) {
    const double n = static_cast<double>(oracle.size());
    if (!(eps > 1.0 / (3.0 * n) && eps <= 1.0)) throw std::domain_error("eps must lie in (1/(3N), 1]");
    const std::uint64_t start = oracle.ledger().oracle_queries;
    CountEstimate out;
    out.value = count_once(oracle, eps, rng, cfg);
    out.queries_used = oracle.ledger().oracle_queries - start;
    out.confidence = 8.0 / (std::numbers::pi * std::numbers::pi);
    return out;
}

CountEstimate estimate_k_32(BitStringOracle& oracle, double rho, Rng& rng, const Config& cfg) {
    return approx_count(oracle, 0.5, rho, rng, cfg);
}

std::uint64_t baseline_grid(std::uint64_t n, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::domain_error("delta must lie in (0, 1)");
    return amp_est_grid(static_cast<std::uint64_t>(std::ceil(8.0 * std::sqrt(static_cast<double>(n)) / delta)));
}

MeanEstimate mean_estimate_baseline(FixedVector& v, double delta, double rho, Rng& rng, const Config& cfg) {
    check_rho(rho);
    const auto grid = baseline_grid(v.size(), delta);
    auto& ledger = v.ledger();
    const std::uint64_t start = ledger.oracle_queries;

    // Half of the failure budget goes to maximum finding, half to the median.
    MeanEstimate out;
    out.argmax = max_find_boosted(v, rho / 2.0, rng, cfg).index;
    const std::uint64_t vmax = v.query(out.argmax);
    if (vmax == 0) {
        out.queries_used = ledger.oracle_queries - start;
        return out;
    }

    double total = 0.0;
    for (auto r : v.raw()) total += std::min(1.0, static_cast<double>(r) / static_cast<double>(vmax));
    // Preparing sqrt(w_i) needs v_i computed and uncomputed: two queries.
    const AmplitudeSource source{total / static_cast<double>(v.size()), 2,
                                 v.log2_size() + v.bit_width(), v.c_gate()};
    const auto reps = median_repetitions(rho / 2.0, cfg);
    std::vector<double> runs;
    runs.reserve(reps);
    for (std::uint64_t r = 0; r < reps; ++r) runs.push_back(amp_est(source, ledger, grid, rng).value);
    out.value = median_of(runs) * v.to_value(vmax);
    out.queries_used = ledger.oracle_queries - start;
    return out;
}

} // namespace qfind
