#pragma once

// Bound-verification suites. Each suite runs the invariant and acceptance
// checks for one family of results and reports every check with the
// statistics it was decided on: sample sizes, binomial bands, fitted slopes.

#include "qfind/config.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace qfind::harness {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::string suite;
    std::vector<CheckResult> checks;
    double seconds = 0.0;

    bool pass() const;
    std::size_t failures() const;
};

struct VerifyOptions {
    std::uint64_t seed = 20240917;
    /// Overrides each suite's main per-cell trial count when nonzero.
    std::uint64_t trials = 0;
    /// Worker threads (0: hardware concurrency).
    unsigned threads = 0;
    Config config;
};

/// grover_exact, ampest, counting, coupon, run_length, multifind, summing,
/// harmonic, tails, oracle.
const std::vector<std::string>& verify_suites();

/// Runs one suite; throws std::invalid_argument for an unknown name.
VerifyReport verify_bounds(const std::string& suite, const VerifyOptions& options = {});

/// One line per check followed by a summary line.
void print_report(std::ostream& out, const VerifyReport& report);

} // namespace qfind::harness
