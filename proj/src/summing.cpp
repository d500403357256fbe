#include "qfind/summing.hpp"

#include "qfind/counting.hpp"
#include "qfind/grover.hpp"
#include "qfind/multifind.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qfind {

namespace {

void check_unit(double x, const char* what) {
    if (!(x > 0.0 && x < 1.0)) throw std::domain_error(std::string(what) + " must lie in (0, 1)");
}

// ceil that ignores round-off just above an integer (p N is often exact).
std::uint64_t ceil_count(double x) { return static_cast<std::uint64_t>(std::ceil(x - 1e-9)); }

} // namespace

std::uint64_t rank_of(const FixedVector& v, ThresholdKey z) {
    std::uint64_t r = 0;
    const auto raw = v.raw();
    for (std::uint64_t p = 0; p < raw.size(); ++p) r += ThresholdKey{raw[p], p + 1} >= z;
    return r;
}

ThresholdKey quantile_key(const FixedVector& v, double p) {
    check_unit(p, "p");
    const auto n = v.size();
    const auto r = std::clamp<std::uint64_t>(ceil_count(p * static_cast<double>(n)), 1, n);
    std::vector<ThresholdKey> keys;
    keys.reserve(n);
    for (Index i = 1; i <= n; ++i) keys.push_back(v.key(i));
    std::nth_element(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(r - 1), keys.end(),
                     std::greater<>{});
    return keys[r - 1];
}

RankWindow quantile_window(std::uint64_t n, double p, double c) {
    check_unit(p, "p");
    if (!(c > 0.0 && c <= 1.0)) throw std::domain_error("quantile constant c must lie in (0, 1]");
    const double pn = p * static_cast<double>(n);
    if (pn < 1.0 - 1e-12) throw std::domain_error("quantile estimation needs p N >= 1");
    RankWindow w;
    w.rank_hi = std::max<std::uint64_t>(1, ceil_count(pn));
    w.rank_lo = std::clamp<std::uint64_t>(ceil_count(c * pn), 1, w.rank_hi);
    const double lo = static_cast<double>(w.rank_lo), hi = static_cast<double>(w.rank_hi);
    // A count with precision eps costs about 1/eps, and the window it leaves
    // has (high - low + 1) admissible values; halve eps from 1/4 until the
    // window is exact and keep the best width per unit cost.
    double best = -1.0;
    for (double eps = 0.25;; eps /= 2.0) {
        RankWindow cand = w;
        cand.eps = eps;
        const bool exact = eps * (hi + 1.0) < 1.0;
        if (exact) {
            // Integer counts within a factor (1 +- eps) are exact on [lo, hi]
            // and cannot cross into it from outside.
            cand.low = w.rank_lo;
            cand.high = w.rank_hi;
        } else {
            cand.low = static_cast<std::uint64_t>(std::ceil(lo * (1.0 + eps)));
            cand.high = static_cast<std::uint64_t>(std::floor(hi * (1.0 - eps)));
        }
        if (cand.high >= cand.low) {
            const double score = static_cast<double>(cand.high - cand.low + 1) * eps;
            if (score > best) {
                best = score;
                w = cand;
            }
        }
        if (exact) return w;
    }
}

QuantileResult quantile_estimate(FixedVector& v, double p, double rho, Rng& rng, const Config& cfg) {
    check_unit(rho, "rho");
    const auto n = v.size();
    const auto win = quantile_window(n, p, cfg.quantile_c);
    const auto log_p = std::ceil(std::log2(1.0 / p));
    const auto log_rho = std::ceil(std::log2(1.0 / rho));
    const auto max_steps = static_cast<std::uint64_t>(8 * (log_p + log_rho + 4));
    const auto max_certify = static_cast<std::uint64_t>(log_rho + 4);
    // Half the failure budget covers wrong certificates, half running out of steps.
    const double rho_certify = rho / (2.0 * static_cast<double>(max_certify));
    auto& ledger = v.ledger();
    const std::uint64_t start = ledger.oracle_queries;

    // Pivots are drawn uniformly from the entries at or above the current
    // floor. A pivot ranked above the window becomes the new floor, one
    // ranked below it is discarded. Ranks are first judged by a single cheap
    // count; only a pivot that looks inside the window pays for a boosted
    // count, and only a boosted count can accept. A cheap count may push the
    // floor below the window, after which every pivot looks too high up, so
    // a run of such verdicts pops the floor again.
    constexpr int kBacktrackAfter = 3;
    QuantileResult res;
    std::vector<ThresholdKey> floors;
    int below_streak = 0;
    std::uint64_t certified = 0;
    for (res.steps = 1; res.steps <= max_steps && certified < max_certify; ++res.steps) {
        Index pivot = 0;
        bool below = true;
        if (floors.empty()) {
            pivot = rng.below(n) + 1;
        } else {
            auto above = threshold_oracle(v, floors.back());
            const auto hit = grover_23(above, win.rank_lo, rng, cfg);
            if (hit.verified) pivot = *hit.index;
        }
        if (pivot != 0) {
            const ThresholdKey key{v.query(pivot), pivot};
            auto at_least = threshold_oracle(v, key);
            auto est = static_cast<std::uint64_t>(approx_count_once(at_least, win.eps, rng, cfg).value);
            if (est >= win.low && est <= win.high) {
                ++certified;
                est = static_cast<std::uint64_t>(approx_count(at_least, win.eps, rho_certify, rng, cfg).value);
                if (est >= win.low && est <= win.high) {
                    res.key = key;
                    res.converged = true;
                    break;
                }
            }
            if (est > win.high) {
                floors.push_back(key);
                below = false;
            }
        }
        below_streak = below ? below_streak + 1 : 0;
        if (below_streak >= kBacktrackAfter && !floors.empty()) {
            floors.pop_back();
            below_streak = 0;
        }
    }
    if (!res.converged) res.key = floors.empty() ? ThresholdKey{} : floors.back();
    res.steps = std::min(res.steps, max_steps);
    res.value = v.to_value(res.key.raw);
    res.queries_used = ledger.oracle_queries - start;
    return res;
}

std::uint64_t approx_sum_grid(double delta, double p, double c) {
    check_unit(delta, "delta");
    const double m = 12.0 * std::numbers::pi / std::sqrt(delta * delta * p * c);
    return amp_est_grid(static_cast<std::uint64_t>(std::ceil(m)));
}

SumEstimate approx_sum(FixedVector& v, double delta, double p, double lambda, double rho, Rng& rng,
                       const Config& cfg) {
    check_unit(delta, "delta");
    check_unit(p, "p");
    check_unit(rho, "rho");
    if (!(lambda >= 6.0)) throw std::invalid_argument("approx_sum needs lambda >= 6");
    const auto n = v.size();
    const double nd = static_cast<double>(n);
    const double c = cfg.quantile_c;
    auto& ledger = v.ledger();
    const QueryLedger start = ledger;

    SumEstimate out;
    {
        const double cpn = c * p * nd;
        const double l1 = cpn / std::log2(p * nd / rho);
        const double l2 = std::pow(std::log2(cpn / rho), 2.0);
        out.regime_ok = lambda <= std::min(l1, l2);
    }

    const auto q = quantile_estimate(v, p, rho / 4.0, rng, cfg);
    out.threshold = q.key;
    out.threshold_value = q.value;
    auto marked = threshold_oracle(v, q.key);
    out.k_est = static_cast<std::uint64_t>(estimate_k_32(marked, rho / 4.0, rng, cfg).value);
    const auto hits = find_all_marked(marked, out.k_est, rho / 4.0, lambda, rng, cfg);
    out.fallback = hits.fallback;
    out.found = hits.found.size();
    out.found_all = hits.success;
    for (auto i : hits.found) out.classical_part += v.to_value(v.query(i));

    if (q.key.raw == 0) {
        out.branch = SumBranch::classical_only;
        out.value = out.classical_part;
    } else {
        out.branch = SumBranch::hybrid;
        out.amplitude = rescaled_amplitude(v, q.key, delta);
        // Preparing sqrt(w_i) computes and uncomputes v_i: two queries.
        const AmplitudeSource source{out.amplitude, 2, v.log2_size() + v.bit_width(), v.c_gate()};
        const auto grid = approx_sum_grid(delta, p, c);
        const auto reps = median_repetitions(rho / 4.0, cfg);
        std::vector<double> runs;
        runs.reserve(reps);
        for (std::uint64_t r = 0; r < reps; ++r) runs.push_back(amp_est(source, ledger, grid, rng).value);
        std::nth_element(runs.begin(), runs.begin() + static_cast<std::ptrdiff_t>(reps / 2), runs.end());
        out.amp_estimate = runs[reps / 2];
        out.amp_part = nd * q.value * out.amp_estimate;
        out.value = out.classical_part + out.amp_part;
    }
    out.queries_used = ledger.oracle_queries - start.oracle_queries;
    out.analytic_gates = ledger.analytic_gates - start.analytic_gates;
    return out;
}

SumParams choose_params(std::uint64_t n, double delta, double rho, ParamMode mode, const Config& cfg) {
    check_unit(delta, "delta");
    check_unit(rho, "rho");
    const double nd = static_cast<double>(n);
    double p = cfg.params_alpha / (delta * nd);
    if (mode == ParamMode::query_optimal) p *= std::log2(1.0 / rho);
    SumParams out;
    out.in_regime = p >= 1.0 / nd && p <= 0.5;
    out.p = std::clamp(p, 1.0 / nd, 0.5);
    const double cpn = cfg.quantile_c * out.p * nd;
    const double l1 = cpn / std::log2(6.0 * out.p * nd / rho);
    const double l2 = std::pow(std::log2(cpn / rho), 2.0);
    if (mode == ParamMode::query_optimal) {
        out.lambda = std::max(6.0, std::min(l1, l2));
    } else {
        out.lambda = 6.0;
    }
    if (std::min(l1, l2) < 6.0) out.in_regime = false;
    return out;
}

} // namespace qfind
