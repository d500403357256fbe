#pragma once

#include <cstdint>
#include <random>

namespace qfind {

/// SplitMix64 finalizer. Bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed for stream `(a, b)` under `master`; distinct tuples give unrelated streams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) noexcept;

/// Seeded random stream shared by every simulation backend.
///
/// The engine is std::mt19937_64; the conversions to doubles and bounded
/// integers are done here rather than through <random> distributions so that
/// a seed reproduces the same trajectory on every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0);

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();

    /// Uniform integer in [0, n). Requires n > 0.
    std::uint64_t below(std::uint64_t n);

    bool bernoulli(double p);

    /// Independent child stream; does not advance this stream.
    Rng split(std::uint64_t stream) const { return Rng(derive_seed(seed_, stream, 0x5eedULL)); }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace qfind
