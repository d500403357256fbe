#include "qfind/harness/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qfind::harness {

namespace {

RateCheck make_rate(std::uint64_t hits, std::uint64_t trials, double target, bool at_least) {
    if (trials == 0) throw std::invalid_argument("rate check needs at least one trial");
    RateCheck c;
    c.hits = hits;
    c.trials = trials;
    c.rate = static_cast<double>(hits) / static_cast<double>(trials);
    c.target = target;
    c.sigma = std::sqrt(target * (1.0 - target) / static_cast<double>(trials));
    c.at_least = at_least;
    c.pass = at_least ? c.rate >= target - 3.0 * c.sigma : c.rate <= target + 3.0 * c.sigma;
    return c;
}

double chi_square_sf(double statistic, double dof) {
    if (dof <= 0.0) return 1.0;
    return boost::math::cdf(boost::math::complement(boost::math::chi_squared(dof), statistic));
}

} // namespace

std::string RateCheck::describe() const {
    std::ostringstream os;
    os << hits << "/" << trials << " = " << rate << (at_least ? " >= " : " <= ") << target
       << (at_least ? " - 3*" : " + 3*") << sigma << " (bound " << (at_least ? target - 3 * sigma : target + 3 * sigma)
       << ")";
    return os.str();
}

RateCheck rate_at_least(std::uint64_t hits, std::uint64_t trials, double target) {
    return make_rate(hits, trials, target, true);
}

RateCheck rate_at_most(std::uint64_t hits, std::uint64_t trials, double target) {
    return make_rate(hits, trials, target, false);
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("least squares needs >= 2 paired points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("least squares needs distinct x values");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r_squared = syy == 0.0 ? 1.0 : sxy * sxy / (sxx * syy);
    f.points = x.size();
    return f;
}

LinearFit loglog_fit(std::span<const double> x, std::span<const double> y) {
    std::vector<double> lx, ly;
    for (double v : x) lx.push_back(std::log(v));
    for (double v : y) ly.push_back(std::log(v));
    return least_squares(lx, ly);
}

ChiSquare chi_square_uniform(std::span<const std::uint64_t> counts) {
    if (counts.size() < 2) throw std::invalid_argument("chi-square needs >= 2 categories");
    double total = 0.0;
    for (auto c : counts) total += static_cast<double>(c);
    if (total == 0.0) throw std::invalid_argument("chi-square needs observations");
    const double expected = total / static_cast<double>(counts.size());
    ChiSquare r;
    for (auto c : counts) {
        const double d = static_cast<double>(c) - expected;
        r.statistic += d * d / expected;
    }
    r.dof = static_cast<double>(counts.size() - 1);
    r.p_value = chi_square_sf(r.statistic, r.dof);
    return r;
}

ChiSquare g_test_independence(std::span<const std::uint64_t> table, std::size_t rows, std::size_t cols) {
    if (table.size() != rows * cols) throw std::invalid_argument("table size mismatch");
    std::vector<double> row(rows, 0.0), col(cols, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            const double c = static_cast<double>(table[i * cols + j]);
            row[i] += c;
            col[j] += c;
            total += c;
        }
    ChiSquare r;
    if (total == 0.0) return r;
    std::size_t live_rows = 0, live_cols = 0;
    for (double v : row) live_rows += v > 0.0;
    for (double v : col) live_cols += v > 0.0;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            const double c = static_cast<double>(table[i * cols + j]);
            if (c > 0.0) r.statistic += 2.0 * c * std::log(c * total / (row[i] * col[j]));
        }
    r.dof = static_cast<double>((live_rows > 0 ? live_rows - 1 : 0) * (live_cols > 0 ? live_cols - 1 : 0));
    r.p_value = chi_square_sf(r.statistic, r.dof);
    return r;
}

double mutual_information(std::span<const std::uint64_t> table, std::size_t rows, std::size_t cols) {
    const auto g = g_test_independence(table, rows, cols);
    double total = 0.0;
    for (auto c : table) total += static_cast<double>(c);
    return total == 0.0 ? 0.0 : g.statistic / (2.0 * total);
}

} // namespace qfind::harness
