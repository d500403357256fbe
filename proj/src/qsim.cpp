#include "qfind/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qfind {

namespace {

constexpr double kPi = std::numbers::pi;

// Probabilities closer than this to 0 or 1 are treated as exact; the
// rotation algebra only loses a few ulps over <= 2*sqrt(N) iterates.
constexpr double kSnap = 1e-12;

double snap(double p) {
    if (p < kSnap) return 0.0;
    if (p > 1.0 - kSnap) return 1.0;
    return p;
}

double checked_weight(std::uint64_t n, std::uint64_t k, double amp_scale) {
    if (n == 0) throw std::invalid_argument("empty search space");
    if (k > n) throw std::invalid_argument("marked_count exceeds n_total");
    if (!(amp_scale >= 0.0 && amp_scale <= 1.0))
        throw std::domain_error("amp_scale must lie in [0, 1]");
    const double a = amp_scale * static_cast<double>(k) / static_cast<double>(n);
    if (a > 1.0 + 1e-12) throw std::domain_error("scaled marked weight exceeds 1");
    return std::min(a, 1.0);
}

void check_marked(std::span<const std::uint64_t> marked, std::uint64_t dim) {
    for (auto m : marked)
        if (m >= dim) throw std::out_of_range("marked position outside the state");
}

} // namespace

bool is_power_of_two(std::uint64_t x) noexcept { return x != 0 && (x & (x - 1)) == 0; }

double grover_success_prob(std::uint64_t n_total, std::uint64_t marked_count,
                           std::uint64_t iterations, double amp_scale) {
    const double a = checked_weight(n_total, marked_count, amp_scale);
    const double theta = std::asin(std::sqrt(a));
    const double s = std::sin((2.0 * static_cast<double>(iterations) + 1.0) * theta);
    return s * s;
}

RotationState RotationState::prepare(std::uint64_t n_total, std::uint64_t marked_count,
                                     double amp_scale) {
    const double a = checked_weight(n_total, marked_count, amp_scale);
    RotationState st;
    st.n_total = n_total;
    st.marked_count = marked_count;
    st.amp_scale = amp_scale;
    st.angle = std::asin(std::sqrt(a));
    st.step = 2.0 * st.angle;
    st.good_amp = a;
    return st;
}

void RotationState::iterate(std::uint64_t count) {
    angle += static_cast<double>(count) * step;
    const double s = std::sin(angle);
    good_amp = std::clamp(s * s, 0.0, 1.0);
}

DenseState::DenseState(std::vector<amplitude> amplitudes) : amps_(std::move(amplitudes)) {
    if (!is_power_of_two(amps_.size()))
        throw std::invalid_argument("DenseState dimension must be a power of two");
    if (amps_.size() > kMaxDenseDim)
        throw std::invalid_argument("DenseState dimension exceeds the dense backend limit");
}

DenseState DenseState::uniform(std::uint64_t dim) {
    if (!is_power_of_two(dim)) throw std::invalid_argument("DenseState dimension must be a power of two");
    const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
    return DenseState(std::vector<amplitude>(dim, amplitude(amp, 0.0)));
}

double DenseState::norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
}

double DenseState::probability(std::span<const std::uint64_t> positions) const {
    check_marked(positions, dim());
    double s = 0.0;
    for (auto p : positions) s += std::norm(amps_[p]);
    return s;
}

void apply_grover_iterate(DenseState& state, std::span<const std::uint64_t> marked) {
    check_marked(marked, state.dim());
    auto amps = state.amplitudes();
    for (auto m : marked) amps[m] = -amps[m];
    DenseState::amplitude mean(0.0, 0.0);
    for (const auto& a : amps) mean += a;
    mean /= static_cast<double>(amps.size());
    for (auto& a : amps) a = 2.0 * mean - a;
}

void apply_amplification_iterate(DenseState& state, std::span<const std::uint64_t> good,
                                 const DenseState& start) {
    if (start.dim() != state.dim()) throw std::invalid_argument("start state dimension mismatch");
    check_marked(good, state.dim());
    auto amps = state.amplitudes();
    for (auto g : good) amps[g] = -amps[g];
    const auto s = start.amplitudes();
    DenseState::amplitude overlap(0.0, 0.0);
    for (std::size_t i = 0; i < amps.size(); ++i) overlap += std::conj(s[i]) * amps[i];
    for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = 2.0 * overlap * s[i] - amps[i];
}

std::uint64_t nth_unmarked(std::span<const std::uint64_t> marked, std::uint64_t r) {
    // marked[j] - j counts the unmarked positions before marked[j]; it is
    // nondecreasing, so the number of marked positions preceding the answer
    // is the first j where that count exceeds r.
    std::size_t lo = 0, hi = marked.size();
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (marked[mid] - mid <= r) lo = mid + 1;
        else hi = mid;
    }
    return r + lo;
}

Shot measure_index(const RotationState& state, std::span<const std::uint64_t> marked, Rng& rng) {
    const std::uint64_t n = state.n_total;
    const std::uint64_t k = marked.size();
    if (k != state.marked_count) throw std::invalid_argument("marked set does not match the state");
    if (k > 0 && marked.back() >= n) throw std::out_of_range("marked position outside the state");

    const double p_good = snap(state.good_amp);
    if (k > 0 && rng.bernoulli(p_good)) return {marked[rng.below(k)], true};

    // The unflagged component weighs each unmarked position 1 and each marked
    // position (1 - amp_scale), all with equal amplitude.
    const double marked_weight = static_cast<double>(k) * (1.0 - state.amp_scale);
    const double unmarked_weight = static_cast<double>(n - k);
    if (unmarked_weight <= 0.0 && marked_weight <= 0.0) return {marked[rng.below(k)], true};
    if (k > 0 && rng.bernoulli(marked_weight / (marked_weight + unmarked_weight)))
        return {marked[rng.below(k)], false};
    return {nth_unmarked(marked, rng.below(n - k)), false};
}

namespace {

std::uint64_t sample_position(std::span<const DenseState::amplitude> amps, Rng& rng) {
    double total = 0.0;
    for (const auto& a : amps) total += std::norm(a);
    const double u = rng.uniform() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        acc += std::norm(amps[i]);
        if (u < acc) return i;
    }
    // Round-off left u at the very top; return the last position with weight.
    for (std::size_t i = amps.size(); i-- > 0;)
        if (std::norm(amps[i]) > 0.0) return i;
    return 0;
}

} // namespace

Shot measure_index(const DenseState& state, std::span<const std::uint64_t> marked, Rng& rng) {
    check_marked(marked, state.dim());
    const auto pos = sample_position(state.amplitudes(), rng);
    return {pos, std::binary_search(marked.begin(), marked.end(), pos)};
}

namespace {

// Uniform start over `dim` positions with the marked weight scaled by
// amp_scale. For amp_scale < 1 a flag qubit is appended as the low bit
// (position 2*i + f) and the good subspace is {2*i + 1 : i marked}.
struct ScaledStart {
    DenseState state;
    std::vector<std::uint64_t> good;
    bool flagged;
};

ScaledStart prepare_scaled(std::uint64_t dim, std::span<const std::uint64_t> marked, double amp_scale) {
    check_marked(marked, dim);
    checked_weight(dim, marked.size(), amp_scale);
    if (amp_scale >= 1.0) {
        if (dim > kMaxDenseDim) throw std::invalid_argument("dense backend limited to 2^15 positions");
        return {DenseState::uniform(dim), {marked.begin(), marked.end()}, false};
    }
    if (2 * dim > kMaxDenseDim) throw std::invalid_argument("dense backend limited to 2^14 positions");
    const double base = 1.0 / std::sqrt(static_cast<double>(dim));
    std::vector<DenseState::amplitude> init(2 * dim, {0.0, 0.0});
    std::vector<std::uint64_t> good;
    good.reserve(marked.size());
    std::size_t next = 0;
    for (std::uint64_t i = 0; i < dim; ++i) {
        if (next < marked.size() && marked[next] == i) {
            init[2 * i + 1] = base * std::sqrt(amp_scale);
            init[2 * i] = base * std::sqrt(1.0 - amp_scale);
            good.push_back(2 * i + 1);
            ++next;
        } else {
            init[2 * i] = base;
        }
    }
    return {DenseState(std::move(init)), std::move(good), true};
}

DenseState evolve(const ScaledStart& start, std::uint64_t iterations) {
    DenseState st = start.state;
    for (std::uint64_t i = 0; i < iterations; ++i) {
        if (start.flagged) apply_amplification_iterate(st, start.good, start.state);
        else apply_grover_iterate(st, start.good);
    }
    return st;
}

} // namespace

double dense_success_prob(std::uint64_t dim, std::span<const std::uint64_t> marked, std::uint64_t iterations,
                          double amp_scale) {
    const auto start = prepare_scaled(dim, marked, amp_scale);
    return evolve(start, iterations).probability(start.good);
}

Shot run_grover(std::uint64_t dim, std::span<const std::uint64_t> marked, std::uint64_t iterations,
                double amp_scale, Backend backend, Rng& rng) {
    if (backend == Backend::rotation) {
        auto st = RotationState::prepare(dim, marked.size(), amp_scale);
        st.iterate(iterations);
        return measure_index(st, marked, rng);
    }
    const auto start = prepare_scaled(dim, marked, amp_scale);
    const auto st = evolve(start, iterations);
    if (!start.flagged) return measure_index(st, marked, rng);
    const auto pos = sample_position(st.amplitudes(), rng);
    return {pos / 2, (pos & 1) == 1 && std::binary_search(marked.begin(), marked.end(), pos / 2)};
}

double phase_kernel(std::uint64_t m, double d) {
    const double frac = d - std::round(d);
    if (std::abs(frac) < 1e-15) return 1.0;
    const double mm = static_cast<double>(m);
    const double num = std::sin(mm * kPi * frac);
    const double den = mm * std::sin(kPi * frac);
    return (num * num) / (den * den);
}

namespace {

double eigenphase(double a) {
    if (!(a >= 0.0 && a <= 1.0)) throw std::domain_error("amplitude must lie in [0, 1]");
    return std::asin(std::sqrt(a)) / kPi;
}

void check_grid(std::uint64_t m) {
    if (m < 2 || !is_power_of_two(m)) throw std::domain_error("phase grid must be a power of two >= 2");
}

} // namespace

double qpe_outcome_probability(double a, std::uint64_t m, std::uint64_t y) {
    check_grid(m);
    const double omega = eigenphase(a);
    const double x = static_cast<double>(y) / static_cast<double>(m);
    return 0.5 * phase_kernel(m, x - omega) + 0.5 * phase_kernel(m, x + omega);
}

std::uint64_t qpe_outcome_sample(double a, std::uint64_t m, Rng& rng) {
    check_grid(m);
    const double omega = eigenphase(a);
    const double phase = rng.bernoulli(0.5) ? omega : 1.0 - omega;
    const double mm = static_cast<double>(m);

    // Walk outward from the grid point nearest the phase; the kernel mass is
    // concentrated there, so the expected walk length is O(log m).
    const auto centre = static_cast<std::int64_t>(std::llround(phase * mm));
    const double u = rng.uniform();
    double acc = 0.0;
    const auto mi = static_cast<std::int64_t>(m);
    for (std::int64_t step = 0; step < mi; ++step) {
        const std::int64_t offset = (step % 2 == 0) ? step / 2 : -(step + 1) / 2;
        const std::int64_t y = ((centre + offset) % mi + mi) % mi;
        acc += phase_kernel(m, static_cast<double>(y) / mm - phase);
        if (u < acc) return static_cast<std::uint64_t>(y);
    }
    return static_cast<std::uint64_t>(((centre % mi) + mi) % mi);
}

double qpe_estimate(std::uint64_t y, std::uint64_t m) {
    const double s = std::sin(kPi * static_cast<double>(y) / static_cast<double>(m));
    return s * s;
}

} // namespace qfind
