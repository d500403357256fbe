#pragma once

// Parameter sweeps: a key=value spec expands into a grid of cells, each
// cell runs a number of independently seeded trials, and the records come
// out in (cell, trial) order regardless of how many threads ran them.
//
// Spec file example:
//   algorithm = multiple_fast
//   n = 65536
//   k = 4, 16, 64
//   rho = 0.05
//   lambda = auto, 6
//   trials = 100
//   seed = 7
//   output = gmf.csv

#include "qfind/config.hpp"
#include "qfind/harness/trial.hpp"

#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace qfind::harness {

/// Names accepted in the `algorithm` key. approx_sum picks its parameters in
/// query-optimal mode and approx_sum_simple in simple mode; explicit p and
/// lambda override either.
const std::vector<std::string>& sweep_algorithms();

struct SweepSpec {
    std::string algorithm;
    std::vector<std::uint64_t> n{1024};
    std::vector<std::uint64_t> k{1};
    std::vector<double> rho{0.05};
    std::vector<double> delta{0.1};
    std::vector<std::optional<double>> lambda{std::nullopt};  // nullopt: choose automatically
    std::vector<std::optional<double>> p{std::nullopt};       // nullopt: choose automatically
    std::uint64_t trials = 1;
    std::uint64_t seed = 1;
    std::string output;  // empty: standard output
    std::string input;   // optional instance file (bit string or vector)
};

SweepSpec parse_sweep_spec(std::istream& in);
SweepSpec load_sweep_spec(const std::string& path);

struct Cell {
    std::string algorithm;
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    double rho = 0.05;
    double delta = 0.1;
    std::optional<double> lambda;
    std::optional<double> p;
};

std::vector<Cell> expand_cells(const SweepSpec& spec);

/// A fixed instance replacing the random generator.
struct FixedInstance {
    std::optional<std::string> bits;
    std::optional<std::vector<std::uint64_t>> vector;  // 32-bit fixed point
};

/// Bit width of generated and loaded vectors.
inline constexpr unsigned kVectorBits = 32;

/// Uniform k-subset of [1, n] in increasing order.
std::vector<std::uint64_t> random_support(std::uint64_t n, std::uint64_t k, Rng& rng);
/// n i.i.d. uniform b-bit fractions.
std::vector<std::uint64_t> random_vector(std::uint64_t n, unsigned bits, Rng& rng);

/// Seed of trial `trial` in cell `cell` under `master`.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t cell, std::uint64_t trial);

/// Runs one trial; throws on invalid parameters.
TrialRecord run_trial(const Cell& cell, std::uint64_t trial, std::uint64_t seed, const Config& cfg,
                      const FixedInstance* fixed = nullptr);

struct SweepSummary {
    std::uint64_t records = 0;
    std::vector<std::string> cell_errors;  // one message per failing cell
};

/// Runs every (cell, trial) pair on `threads` workers (0: hardware
/// concurrency) and hands the records to `sink` in order. A cell whose
/// parameters are invalid is reported in the summary and skipped.
SweepSummary run_trials(const SweepSpec& spec, const std::function<void(const TrialRecord&)>& sink,
                        const Config& cfg = {}, unsigned threads = 0);

/// Calls body(i) for i in [0, count) on `threads` workers (0: hardware concurrency).
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

} // namespace qfind::harness
