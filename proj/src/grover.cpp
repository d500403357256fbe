#include "qfind/grover.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qfind {

ExactSchedule exact_grover_schedule(std::uint64_t n, std::uint64_t k0) {
    if (k0 < 1 || k0 > n) throw std::invalid_argument("exact Grover needs 1 <= k0 <= N");
    const double a = static_cast<double>(k0) / static_cast<double>(n);
    const double theta = std::asin(std::sqrt(a));
    // The 1e-9 keeps exact cases such as N = 4, k0 = 1 from rounding up.
    const double m = std::ceil(std::numbers::pi / (4.0 * theta) - 0.5 - 1e-9);
    ExactSchedule s;
    s.iterations = static_cast<std::uint64_t>(std::max(0.0, m));
    const double target = std::sin(std::numbers::pi / (2.0 * (2.0 * static_cast<double>(s.iterations) + 1.0)));
    s.amp_scale = std::min(1.0, target * target / a);
    return s;
}

SearchOutcome grover_certainty(BitStringOracle& oracle, std::uint64_t k0, Rng& rng, const Config& cfg) {
    const auto sched = exact_grover_schedule(oracle.size(), k0);
    const auto shot = run_grover(oracle.size(), oracle.positions(), sched.iterations, sched.amp_scale,
                                 cfg.backend, rng);
    oracle.charge(sched.iterations);
    SearchOutcome out;
    out.index = shot.position + 1;
    out.verified = oracle.query(*out.index);
    out.queries_used = sched.iterations + 1;
    return out;
}

SearchOutcome grover_expectation(BitStringOracle& oracle, Rng& rng, std::uint64_t hard_cap,
                                 const Config& cfg) {
    const double root_n = std::sqrt(static_cast<double>(oracle.size()));
    const std::uint64_t cap =
        hard_cap > 0 ? hard_cap : static_cast<std::uint64_t>(std::ceil(cfg.hard_cap_factor * root_n));
    SearchOutcome out;
    double budget = 1.0;
    for (;;) {
        const auto j = rng.below(static_cast<std::uint64_t>(std::ceil(budget)));
        if (out.queries_used + j + 1 > cap) {
            out.cap_exhausted = true;
            return out;
        }
        const auto shot = run_grover(oracle.size(), oracle.positions(), j, 1.0, cfg.backend, rng);
        oracle.charge(j);
        out.queries_used += j + 1;
        if (oracle.query(shot.position + 1)) {
            out.index = shot.position + 1;
            out.verified = true;
            return out;
        }
        budget = std::min(cfg.bbht_growth * budget, root_n);
    }
}

std::uint64_t grover_23_cap(std::uint64_t n, std::uint64_t k_lb, const Config& cfg) {
    if (k_lb < 1) throw std::invalid_argument("k_lb must be positive");
    const double cap = std::floor(cfg.truncation_c * std::sqrt(static_cast<double>(n) / static_cast<double>(k_lb)));
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(cap));
}

SearchOutcome grover_23(BitStringOracle& oracle, std::uint64_t k_lb, Rng& rng, const Config& cfg) {
    return grover_expectation(oracle, rng, grover_23_cap(oracle.size(), k_lb, cfg), cfg);
}

MaxFindResult max_find(FixedVector& v, Rng& rng, const Config& cfg) {
    MaxFindResult res;
    const std::uint64_t n = v.size();
    if (n == 1) return res;

    auto& ledger = v.ledger();
    const std::uint64_t start = ledger.oracle_queries;
    const auto budget = static_cast<std::uint64_t>(std::ceil(cfg.maxfind_budget * std::sqrt(static_cast<double>(n))));
    auto used = [&] { return ledger.oracle_queries - start; };

    res.index = rng.below(n) + 1;
    ThresholdKey best{v.query(res.index), res.index};
    for (;;) {
        auto x = threshold_oracle(v, best.successor());
        const std::uint64_t per_app = x.cost().queries;
        if (used() + per_app > budget) break;
        const auto out = grover_expectation(x, rng, (budget - used()) / per_app, cfg);
        if (!out.verified) break;
        res.index = *out.index;
        // Without budget left to read the new value it still beats the old one.
        if (used() + 1 > budget) break;
        best = {v.query(res.index), res.index};
    }
    res.queries = used();
    return res;
}

MaxFindResult max_find_boosted(FixedVector& v, double rho, Rng& rng, const Config& cfg) {
    if (!(rho > 0.0 && rho < 1.0)) throw std::domain_error("rho must lie in (0, 1)");
    const auto reps = static_cast<int>(std::max(1.0, std::ceil(std::log2(1.0 / rho))));
    const std::uint64_t start = v.ledger().oracle_queries;
    MaxFindResult best;
    ThresholdKey best_key{};
    for (int r = 0; r < reps; ++r) {
        const auto cand = max_find(v, rng, cfg);
        if (v.size() == 1) break;
        const ThresholdKey key{v.query(cand.index), cand.index};
        if (r == 0 || key > best_key) {
            best = cand;
            best_key = key;
        }
    }
    best.queries = v.ledger().oracle_queries - start;
    return best;
}

} // namespace qfind
