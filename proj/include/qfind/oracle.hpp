#pragma once

// Oracle access models with exact query accounting.
//
// Indices are 1-based, as in the query model: a string x has entries
// x_1, ..., x_N. Every oracle keeps its marked set materialized so the
// simulator can evolve states; algorithms only learn about it through
// query() and the simulated measurements.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qfind {

using Index = std::uint64_t;

/// Exact counters for one trial. Every oracle application (plain,
/// controlled or inverse) costs one query of the root oracle.
struct QueryLedger {
    std::uint64_t oracle_queries = 0;
    std::uint64_t analytic_gates = 0;

    void charge(std::uint64_t queries, std::uint64_t gates) {
        oracle_queries += queries;
        analytic_gates += gates;
    }
    void reset() { *this = QueryLedger{}; }
};

/// Cost of one application of a (possibly derived) oracle in terms of the
/// root oracle.
struct QueryCost {
    std::uint64_t queries = 1;
    std::uint64_t gates = 0;
};

/// Sorted, duplicate-free set of 1-based indices.
class SortedIndexList {
public:
    SortedIndexList() = default;
    SortedIndexList(std::initializer_list<Index> indices);

    /// Inserts i; returns false if it was already present.
    bool insert(Index i);
    bool contains(Index i) const;

    std::size_t size() const noexcept { return items_.size(); }
    bool empty() const noexcept { return items_.empty(); }
    std::span<const Index> indices() const noexcept { return items_; }
    auto begin() const noexcept { return items_.begin(); }
    auto end() const noexcept { return items_.end(); }

    friend bool operator==(const SortedIndexList&, const SortedIndexList&) = default;

private:
    std::vector<Index> items_;
};

class BitStringOracle {
public:
    /// `positions` are the sorted 0-based positions of the ones of x.
    BitStringOracle(std::uint64_t n, std::vector<std::uint64_t> positions, QueryLedger& ledger,
                    QueryCost cost = {}, std::uint64_t c_gate = 1);

    static BitStringOracle from_bits(std::string_view bits, QueryLedger& ledger,
                                     std::uint64_t c_gate = 1);
    static BitStringOracle from_support(std::uint64_t n, std::span<const Index> support,
                                        QueryLedger& ledger, std::uint64_t c_gate = 1);

    std::uint64_t size() const noexcept { return n_; }
    unsigned log2_size() const noexcept;

    /// x_i; charges one application.
    bool query(Index i);
    /// Charges `applications` applications without reading anything
    /// (used for the oracle calls folded into a simulated circuit).
    void charge(std::uint64_t applications);

    QueryCost cost() const noexcept { return cost_; }
    std::uint64_t c_gate() const noexcept { return c_gate_; }
    QueryLedger& ledger() const noexcept { return *ledger_; }

    // Ground truth for the simulator and for tests.
    std::span<const std::uint64_t> positions() const noexcept { return positions_; }
    std::vector<Index> support() const;
    std::uint64_t weight() const noexcept { return positions_.size(); }
    bool bit(Index i) const;
    std::string bits() const;

private:
    std::uint64_t n_;
    std::vector<std::uint64_t> positions_;
    QueryLedger* ledger_;
    QueryCost cost_;
    std::uint64_t c_gate_;
};

/// Lexicographic (value, index) order that makes all entries distinct.
struct ThresholdKey {
    std::uint64_t raw = 0;
    Index index = 0;

    /// Key of a plain value: every entry with that value compares >= it.
    static ThresholdKey at_value(std::uint64_t raw) { return {raw, 0}; }
    /// Smallest key strictly above this one.
    ThresholdKey successor() const { return {raw, index + 1}; }

    friend auto operator<=>(const ThresholdKey&, const ThresholdKey&) = default;
};

/// Vector in [0,1)^N stored as (0,b) fixed-point fractions raw / 2^b.
class FixedVector {
public:
    FixedVector(std::vector<std::uint64_t> raw, unsigned bits, QueryLedger& ledger,
                std::uint64_t c_gate = 1);

    /// Rounds each value to the nearest b-bit fraction, saturating at 1 - 2^-b.
    static FixedVector from_values(std::span<const double> values, unsigned bits,
                                   QueryLedger& ledger, std::uint64_t c_gate = 1);

    static std::uint64_t to_raw(double value, unsigned bits);
    double to_value(std::uint64_t raw) const;

    std::uint64_t size() const noexcept { return raw_.size(); }
    unsigned log2_size() const noexcept;
    unsigned bit_width() const noexcept { return bits_; }

    /// Raw entry i; charges one query.
    std::uint64_t query(Index i);
    void charge(std::uint64_t applications);

    std::uint64_t c_gate() const noexcept { return c_gate_; }
    QueryLedger& ledger() const noexcept { return *ledger_; }

    // Ground truth for the simulator and for tests.
    std::span<const std::uint64_t> raw() const noexcept { return raw_; }
    double value(Index i) const;
    ThresholdKey key(Index i) const;
    double sum() const;

private:
    std::vector<std::uint64_t> raw_;
    unsigned bits_;
    QueryLedger* ledger_;
    std::uint64_t c_gate_;
};

/// Oracle for z with z_i = x_i off J and z_i = 0 on J. Every j in J must be marked.
BitStringOracle mask_found(const BitStringOracle& oracle, const SortedIndexList& found);

/// Oracle for y_j = x_{lo+j} when lo + j < hi and 0 otherwise, over the
/// smallest power-of-two domain covering the open interval (lo, hi).
BitStringOracle restrict_interval(const BitStringOracle& oracle, Index lo, Index hi);

/// Oracle for x_i = [key_i >= z].
BitStringOracle threshold_oracle(const FixedVector& v, ThresholdKey z);

/// Mean of sin^2(alpha_i) where alpha_i is arcsin(sqrt(w_i)) rounded to
/// ceil(log2(4N/delta)) fractional bits and w_i = v_i/z below the threshold, 0 above.
double rescaled_amplitude(const FixedVector& v, ThresholdKey z, double delta);

/// Number of fractional bits used by rescaled_amplitude.
unsigned rescale_precision_bits(std::uint64_t n, double delta);

} // namespace qfind
