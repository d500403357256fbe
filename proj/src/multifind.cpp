#include "qfind/multifind.hpp"

#include "qfind/counting.hpp"
#include "qfind/grover.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qfind {

namespace {

struct LedgerMark {
    const QueryLedger& ledger;
    QueryLedger start = ledger;

    void finish(MultiFindResult& r) const {
        r.queries_used = ledger.oracle_queries - start.oracle_queries;
        r.analytic_gates = ledger.analytic_gates - start.analytic_gates;
    }
};

void check_rho(double rho) {
    if (!(rho > 0.0 && rho < 1.0)) throw std::domain_error("rho must lie in (0, 1)");
}

} // namespace

MultiFindResult grover_certainty_multiple(const BitStringOracle& oracle, std::uint64_t k_ub, Rng& rng,
                                          const Config& cfg) {
    if (k_ub < 1) throw std::invalid_argument("k_ub must be positive");
    const LedgerMark mark{oracle.ledger()};
    MultiFindResult res;
    BitStringOracle current = oracle;
    for (std::uint64_t m = std::min(k_ub, oracle.size()); m >= 1; --m) {
        const auto out = grover_certainty(current, m, rng, cfg);
        if (!out.verified) continue;
        res.found.insert(*out.index);
        current = mask_found(current, SortedIndexList{*out.index});
    }
    res.success = res.found.size() == oracle.weight();
    mark.finish(res);
    return res;
}

MultiFindResult grover_coupon(BitStringOracle& oracle, std::uint64_t rounds, std::uint64_t k_lb,
                              std::uint64_t t, Rng& rng, const Config& cfg) {
    if (t < 1 || k_lb < 1) throw std::invalid_argument("grover_coupon needs t >= 1 and k_lb >= 1");
    const LedgerMark mark{oracle.ledger()};
    MultiFindResult res;
    while (res.rounds < rounds && res.found.size() < t) {
        ++res.rounds;
        const auto out = grover_23(oracle, k_lb, rng, cfg);
        if (!out.index) {
            oracle.charge(1);  // the round's verification query
            continue;
        }
        if (oracle.query(*out.index)) res.found.insert(*out.index);
    }
    res.success = res.found.size() == oracle.weight();
    mark.finish(res);
    return res;
}

std::uint64_t stage1_rounds(std::uint64_t t, double rho) {
    check_rho(rho);
    const double r = 6.0 * std::log(2.0) * (static_cast<double>(t) + 1.0) +
                     2.0 * std::log(3.0 / rho) / std::log(1.5);
    return static_cast<std::uint64_t>(std::ceil(r));
}

bool multiple_fast_regime(std::uint64_t k_est, double rho, double lambda) {
    if (k_est == 0 || !(rho > 0.0 && rho < 1.0)) return false;
    const double k = static_cast<double>(k_est);
    if (!(lambda >= 6.0 && lambda <= k)) return false;
    const double t = std::ceil(k / lambda);
    return t >= std::log2(6.0 * k / rho);
}

double lambda_star(std::uint64_t k_est, double rho) {
    check_rho(rho);
    if (k_est == 0) return 0.0;
    const double k = static_cast<double>(k_est);
    const double l = std::log2(k / rho);
    return std::min(k / std::log2(6.0 * k / rho), l * l);
}

MultiFindResult grover_multiple_fast(const BitStringOracle& oracle, std::uint64_t k_est, double rho,
                                     double lambda, Rng& rng, const Config& cfg) {
    check_rho(rho);
    if (!multiple_fast_regime(k_est, rho, lambda))
        throw std::invalid_argument("grover_multiple_fast: need 6 <= lambda <= k_est and "
                                    "ceil(k_est/lambda) >= log2(6 k_est/rho)");
    const LedgerMark mark{oracle.ledger()};
    const double k = static_cast<double>(k_est);
    const auto t = static_cast<std::uint64_t>(std::ceil(k / lambda));
    const auto k_lb = static_cast<std::uint64_t>(std::ceil(2.0 * k / 3.0));

    MultiFindResult res;
    res.lambda = lambda;
    BitStringOracle root = oracle;
    const auto stage1 = grover_coupon(root, stage1_rounds(t, rho), k_lb, t, rng, cfg);
    res.rounds = stage1.rounds;
    res.stage1 = stage1.found;
    res.found = stage1.found;

    std::vector<Index> cuts{0};
    cuts.insert(cuts.end(), stage1.found.begin(), stage1.found.end());
    cuts.push_back(oracle.size() + 1);
    const double rho_gap = rho / (3.0 * (static_cast<double>(t) + 1.0));
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Index lo = cuts[i], hi = cuts[i + 1];
        if (hi - lo < 2) continue;
        auto gap = restrict_interval(oracle, lo, hi);
        const auto est = static_cast<std::uint64_t>(estimate_k_32(gap, rho_gap, rng, cfg).value);
        if (est == 0) continue;
        const auto sub = grover_certainty_multiple(gap, 2 * est, rng, cfg);
        for (auto j : sub.found) res.found.insert(lo + j);
    }
    res.success = res.found.size() == oracle.weight();
    mark.finish(res);
    return res;
}

MultiFindResult find_all_marked(const BitStringOracle& oracle, std::uint64_t k_est, double rho,
                                double lambda, Rng& rng, const Config& cfg) {
    check_rho(rho);
    if (k_est == 0) {
        MultiFindResult res;
        res.success = oracle.weight() == 0;
        res.fallback = true;
        return res;
    }
    const double l = lambda > 0.0 ? lambda : lambda_star(k_est, rho);
    if (multiple_fast_regime(k_est, rho, l)) return grover_multiple_fast(oracle, k_est, rho, l, rng, cfg);
    auto res = grover_certainty_multiple(oracle, 2 * k_est, rng, cfg);
    res.fallback = true;
    return res;
}

} // namespace qfind
