#include "qfind/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qfind::analysis {

namespace {

// Kahan-Babuska (Neumaier) running sum.
struct CompensatedSum {
    long double sum = 0.0L, carry = 0.0L;
    void add(long double x) {
        const long double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x)) carry += (sum - t) + x;
        else carry += (x - t) + sum;
        sum = t;
    }
    long double value() const { return sum + carry; }
};

void check_rho(double rho) {
    if (!(rho > 0.0 && rho <= 1.0)) throw std::domain_error("rho must lie in (0, 1]");
}

} // namespace

long double harmonic(std::uint64_t k) {
    CompensatedSum s;
    for (std::uint64_t j = 1; j <= k; ++j) s.add(1.0L / static_cast<long double>(j));
    return s.value();
}

std::vector<long double> harmonic_table(std::uint64_t kmax) {
    std::vector<long double> h(kmax + 1, 0.0L);
    CompensatedSum s;
    for (std::uint64_t j = 1; j <= kmax; ++j) {
        s.add(1.0L / static_cast<long double>(j));
        h[j] = s.value();
    }
    return h;
}

HarmonicChecks harmonic_bounds_check(std::uint64_t k, std::uint64_t t, long double h_k,
                                     long double h_k_minus_t) {
    HarmonicChecks c;
    if (t > k) throw std::invalid_argument("harmonic_bounds_check needs t <= k");
    if (k == 0) return c;
    const long double kd = static_cast<long double>(k), td = static_cast<long double>(t);
    const long double excess = h_k - kEulerGamma - std::log(kd);
    c.euler = excess >= 1.0L / (2.0L * (kd + 1.0L)) && excess <= 1.0L / (2.0L * kd);
    const long double gap = h_k - h_k_minus_t;
    if (t < k) {
        const long double rhs = std::log(kd / (kd - td)) + (2.0L * kd - td + 1.0L) / (2.0L * kd * (kd - td + 1.0L));
        c.log_gap = gap <= rhs;
    }
    if (2 * t <= k) c.linear = gap <= 2.0L * (td + 1.0L) / kd;
    return c;
}

HarmonicChecks harmonic_bounds_check(std::uint64_t k, std::uint64_t t) {
    if (t > k) throw std::invalid_argument("harmonic_bounds_check needs t <= k");
    return harmonic_bounds_check(k, t, harmonic(k), harmonic(k - t));
}

double geo_tail_threshold(double mu, double p_star, double rho) {
    if (!(mu > 0.0)) throw std::domain_error("mu must be positive");
    if (!(p_star > 0.0 && p_star <= 1.0)) throw std::domain_error("p_star must lie in (0, 1]");
    check_rho(rho);
    const double first = 2.0 * std::log(2.0) * mu;
    if (p_star >= 1.0 || rho >= 1.0) return first;
    return first + 2.0 * std::log(1.0 / rho) / -std::log1p(-p_star);
}

double coupon_budget(std::uint64_t t, std::uint64_t k, double rho) {
    if (t < 1 || t > k) throw std::invalid_argument("coupon_budget needs 1 <= t <= k");
    check_rho(rho);
    const double kd = static_cast<double>(k), td = static_cast<double>(t);
    const double gap = static_cast<double>(harmonic(k) - harmonic(k - t));
    return 3.0 * std::log(2.0) * kd * gap + 2.0 * std::log(1.0 / rho) / std::log(3.0 * kd / (kd + 2.0 * (td - 1.0)));
}

double run_length_bound(std::uint64_t k, std::uint64_t t, std::uint64_t ell) {
    if (t < 1 || t > k) throw std::invalid_argument("run_length_bound needs 1 <= t <= k");
    if (ell < 1 || ell > k - t) throw std::invalid_argument("run_length_bound needs 1 <= ell <= k - t");
    const double kd = static_cast<double>(k);
    return (kd - static_cast<double>(ell) + 1.0) * std::pow(1.0 - static_cast<double>(t) / kd, static_cast<double>(ell));
}

double run_probability_exact(std::uint64_t k, std::uint64_t t, std::uint64_t ell) {
    if (t > k) throw std::invalid_argument("run_probability_exact needs t <= k");
    if (ell < 1) throw std::invalid_argument("run_probability_exact needs ell >= 1");
    // The k - t unchosen elements split into t + 1 gaps g_0..g_t (before,
    // between and after the chosen ones). Subsets bijectively match gap
    // compositions, so count those with every gap below ell.
    const std::uint64_t free = k - t;
    std::vector<long double> ways(free + 1, 0.0L), next(free + 1);
    ways[0] = 1.0L;
    for (std::uint64_t gap = 0; gap <= t; ++gap) {
        std::fill(next.begin(), next.end(), 0.0L);
        for (std::uint64_t s = 0; s <= free; ++s) {
            if (ways[s] == 0.0L) continue;
            for (std::uint64_t g = 0; g < ell && s + g <= free; ++g) next[s + g] += ways[s];
        }
        ways.swap(next);
    }
    long double total = 1.0L;  // C(k, t)
    for (std::uint64_t j = 1; j <= t; ++j)
        total = total * static_cast<long double>(k - t + j) / static_cast<long double>(j);
    return static_cast<double>(1.0L - ways[free] / total);
}

Budget query_budget(const std::string& label, const BudgetParams& q) {
    Budget b;
    b.label = label;
    const double logn = q.n > 1 ? std::log2(q.n) : 0.0;
    if (label == "grover23") {
        b.queries = std::sqrt(q.n / q.k_lb);
        b.gates = b.queries * logn;
    } else if (label == "certainty_multiple") {
        b.queries = std::sqrt(q.n * q.k);
        b.gates = b.queries * (q.k + 1.0) * logn;
    } else if (label == "coupon") {
        const double r = coupon_budget(static_cast<std::uint64_t>(q.t), static_cast<std::uint64_t>(q.k), q.rho);
        b.queries = r * std::sqrt(q.n / q.k_lb);
        b.gates = b.queries * logn;
    } else if (label == "multiple_fast") {
        const double root = std::sqrt(q.n * q.k);
        b.queries = root * (1.0 + std::log2(q.k / (q.rho * q.lambda)) / std::sqrt(q.lambda));
        b.gates = root * q.lambda * std::log2(q.k / q.rho) * logn;
    } else if (label == "approx_count") {
        const double floor_ek = std::floor(q.eps * q.k) + 1.0;
        b.queries = std::sqrt(q.n / floor_ek) + std::sqrt(q.k * (q.n - q.k)) / floor_ek;
        b.gates = b.queries * logn;
    } else if (label == "amp_est") {
        b.queries = 2.0 * q.m;
        b.gates = q.qubits * q.m;
    } else if (label == "approx_sum") {
        const double lr = std::log2(1.0 / q.rho);
        const double sp = std::sqrt(q.p);
        const double np = q.n * q.p;
        const double blogb = q.bits * std::log2(q.bits);
        const double logn_delta = std::log2(q.n / q.delta);
        const double t1 = lr / sp;
        const double t2 = std::sqrt(q.n / (np + 1.0)) * lr;
        const double t3 = q.n * sp * (1.0 + std::log2(np / (q.lambda * q.rho)) / std::sqrt(q.lambda));
        const double t4 = lr / (q.delta * sp);
        b.queries = t1 + t2 + t3 + t4;
        b.gates = t1 * blogb * logn + t2 * logn + q.n * sp * q.lambda * std::log2(np / q.rho) * logn +
                  t4 * blogb * logn_delta * std::pow(std::log2(logn_delta), 2.0);
    } else {
        throw std::invalid_argument("unknown budget label: " + label);
    }
    return b;
}

} // namespace qfind::analysis
