#pragma once

// Simulation engine for Grover-type dynamics and phase-estimation outcomes.
//
// Positions in this layer are 0-based basis labels |0>, ..., |dim-1>; the
// oracle layer maps its 1-based indices onto them. The oracle output qubit is
// never materialized: marked positions receive their phase by kickback.

#include "qfind/rng.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace qfind {

enum class Backend { rotation, dense };

/// Largest state vector the dense backend will allocate (index space 2^14,
/// doubled when an amplitude-reduction flag is needed).
inline constexpr std::uint64_t kMaxDenseDim = std::uint64_t{1} << 15;

/// Probability of landing in the marked subspace after `iterations` Grover
/// iterates from the uniform state whose marked weight was scaled by `amp_scale`.
double grover_success_prob(std::uint64_t n_total, std::uint64_t marked_count,
                           std::uint64_t iterations, double amp_scale = 1.0);

/// Exact two-dimensional picture of amplitude amplification.
///
/// `angle` is the current angle from the unmarked axis; each iterate adds
/// `step` = 2*arcsin(sqrt(amp_scale * k / n)).
struct RotationState {
    std::uint64_t n_total = 1;
    std::uint64_t marked_count = 0;
    double good_amp = 0.0;
    double amp_scale = 1.0;
    double angle = 0.0;
    double step = 0.0;

    static RotationState prepare(std::uint64_t n_total, std::uint64_t marked_count,
                                 double amp_scale = 1.0);
    void iterate(std::uint64_t count = 1);
};

class DenseState {
public:
    using amplitude = std::complex<double>;

    explicit DenseState(std::vector<amplitude> amplitudes);
    static DenseState uniform(std::uint64_t dim);

    std::uint64_t dim() const noexcept { return amps_.size(); }
    std::span<const amplitude> amplitudes() const noexcept { return amps_; }
    std::span<amplitude> amplitudes() noexcept { return amps_; }

    double norm_squared() const;
    /// Total probability on the given positions.
    double probability(std::span<const std::uint64_t> positions) const;

private:
    std::vector<amplitude> amps_;
};

/// Phase flip on `marked`, then inversion about the mean.
void apply_grover_iterate(DenseState& state, std::span<const std::uint64_t> marked);

/// Phase flip on `good`, then reflection about `start`.
void apply_amplification_iterate(DenseState& state, std::span<const std::uint64_t> good,
                                 const DenseState& start);

/// Result of measuring the index register.
/// `good` is true when the outcome came from the marked subspace with the
/// amplitude flag set (for amp_scale = 1 this is plain membership in `marked`).
struct Shot {
    std::uint64_t position = 0;
    bool good = false;
};

/// Measures a rotation-backend state. `marked` must be sorted and hold
/// exactly `state.marked_count` positions below `state.n_total`.
Shot measure_index(const RotationState& state, std::span<const std::uint64_t> marked, Rng& rng);

/// Measures a dense state in the computational basis.
Shot measure_index(const DenseState& state, std::span<const std::uint64_t> marked, Rng& rng);

/// Prepares the uniform state over `dim` positions with the weight of the
/// (sorted) `marked` positions scaled by `amp_scale`, runs `iterations`
/// amplitude-amplification iterates and measures.
Shot run_grover(std::uint64_t dim, std::span<const std::uint64_t> marked,
                std::uint64_t iterations, double amp_scale, Backend backend, Rng& rng);

/// Probability that the dense backend measures a flagged marked position
/// after the same preparation and iterations as run_grover; the dense
/// counterpart of grover_success_prob.
double dense_success_prob(std::uint64_t dim, std::span<const std::uint64_t> marked,
                          std::uint64_t iterations, double amp_scale = 1.0);

/// Fejer kernel sin^2(M*pi*d) / (M^2 sin^2(pi*d)); 1 when d is an integer.
double phase_kernel(std::uint64_t m, double d);

/// Exact probability of outcome `y` when phase estimation with `m` grid
/// points is run on the amplification iterate for marked weight `a`
/// (eigenphases +-arcsin(sqrt(a)), weight 1/2 each).
double qpe_outcome_probability(double a, std::uint64_t m, std::uint64_t y);

/// Samples y in [0, m) from the distribution above. `m` must be a power of two >= 2.
std::uint64_t qpe_outcome_sample(double a, std::uint64_t m, Rng& rng);

/// sin^2(pi * y / m), the amplitude estimate attached to outcome y.
double qpe_estimate(std::uint64_t y, std::uint64_t m);

/// r-th (0-based) position in [0, n) that is not in the sorted list `marked`.
std::uint64_t nth_unmarked(std::span<const std::uint64_t> marked, std::uint64_t r);

bool is_power_of_two(std::uint64_t x) noexcept;

} // namespace qfind
