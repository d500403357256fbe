#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace qfind::harness {

/// Outcome of one Monte Carlo trial. Parameters that do not apply to the
/// algorithm stay empty and are written as empty CSV fields.
struct TrialRecord {
    std::string algorithm;
    std::uint64_t n = 0;
    std::optional<std::uint64_t> k;
    std::optional<double> rho;
    std::optional<double> delta;
    std::optional<double> lambda;
    std::optional<double> p;
    std::uint64_t trial = 0;
    std::uint64_t seed = 0;
    std::uint64_t queries = 0;
    std::uint64_t analytic_gates = 0;
    bool success = false;
    std::optional<double> value;
    std::optional<double> error;

    friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

} // namespace qfind::harness
