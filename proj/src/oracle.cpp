#include "qfind/oracle.hpp"

#include "qfind/qsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace qfind {

namespace {

unsigned exact_log2(std::uint64_t n) { return static_cast<unsigned>(std::countr_zero(n)); }

void check_index(Index i, std::uint64_t n) {
    if (i < 1 || i > n) throw std::out_of_range("oracle index outside [1, N]");
}

} // namespace

SortedIndexList::SortedIndexList(std::initializer_list<Index> indices) {
    for (auto i : indices) insert(i);
}

bool SortedIndexList::insert(Index i) {
    auto it = std::lower_bound(items_.begin(), items_.end(), i);
    if (it != items_.end() && *it == i) return false;
    items_.insert(it, i);
    return true;
}

bool SortedIndexList::contains(Index i) const {
    return std::binary_search(items_.begin(), items_.end(), i);
}

BitStringOracle::BitStringOracle(std::uint64_t n, std::vector<std::uint64_t> positions,
                                 QueryLedger& ledger, QueryCost cost, std::uint64_t c_gate)
    : n_(n), positions_(std::move(positions)), ledger_(&ledger), cost_(cost), c_gate_(c_gate) {
    if (!is_power_of_two(n_)) throw std::invalid_argument("oracle size must be a power of two");
    for (std::size_t j = 0; j < positions_.size(); ++j) {
        if (positions_[j] >= n_) throw std::out_of_range("marked position outside the oracle");
        if (j > 0 && positions_[j] <= positions_[j - 1])
            throw std::invalid_argument("marked positions must be strictly increasing");
    }
}

BitStringOracle BitStringOracle::from_bits(std::string_view bits, QueryLedger& ledger,
                                           std::uint64_t c_gate) {
    std::vector<std::uint64_t> pos;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') pos.push_back(i);
        else if (bits[i] != '0') throw std::invalid_argument("bit string must contain only 0 and 1");
    }
    return BitStringOracle(bits.size(), std::move(pos), ledger, {}, c_gate);
}

BitStringOracle BitStringOracle::from_support(std::uint64_t n, std::span<const Index> support,
                                              QueryLedger& ledger, std::uint64_t c_gate) {
    std::vector<std::uint64_t> pos;
    pos.reserve(support.size());
    for (auto i : support) {
        check_index(i, n);
        pos.push_back(i - 1);
    }
    std::sort(pos.begin(), pos.end());
    if (std::adjacent_find(pos.begin(), pos.end()) != pos.end())
        throw std::invalid_argument("duplicate index in support");
    return BitStringOracle(n, std::move(pos), ledger, {}, c_gate);
}

unsigned BitStringOracle::log2_size() const noexcept { return exact_log2(n_); }

bool BitStringOracle::query(Index i) {
    check_index(i, n_);
    charge(1);
    return bit(i);
}

void BitStringOracle::charge(std::uint64_t applications) {
    ledger_->charge(applications * cost_.queries, applications * cost_.gates);
}

std::vector<Index> BitStringOracle::support() const {
    std::vector<Index> out(positions_.begin(), positions_.end());
    for (auto& i : out) ++i;
    return out;
}

bool BitStringOracle::bit(Index i) const {
    check_index(i, n_);
    return std::binary_search(positions_.begin(), positions_.end(), i - 1);
}

std::string BitStringOracle::bits() const {
    std::string s(n_, '0');
    for (auto p : positions_) s[p] = '1';
    return s;
}

FixedVector::FixedVector(std::vector<std::uint64_t> raw, unsigned bits, QueryLedger& ledger,
                         std::uint64_t c_gate)
    : raw_(std::move(raw)), bits_(bits), ledger_(&ledger), c_gate_(c_gate) {
    if (bits_ < 1 || bits_ > 62) throw std::invalid_argument("bit width must lie in [1, 62]");
    if (!is_power_of_two(raw_.size())) throw std::invalid_argument("vector length must be a power of two");
    const std::uint64_t limit = std::uint64_t{1} << bits_;
    for (auto r : raw_)
        if (r >= limit) throw std::out_of_range("fixed-point entry exceeds the bit width");
}

FixedVector FixedVector::from_values(std::span<const double> values, unsigned bits,
                                     QueryLedger& ledger, std::uint64_t c_gate) {
    std::vector<std::uint64_t> raw;
    raw.reserve(values.size());
    for (double v : values) raw.push_back(to_raw(v, bits));
    return FixedVector(std::move(raw), bits, ledger, c_gate);
}

std::uint64_t FixedVector::to_raw(double value, unsigned bits) {
    if (!(value >= 0.0 && value <= 1.0)) throw std::domain_error("vector entries must lie in [0, 1]");
    const double scaled = std::round(std::ldexp(value, static_cast<int>(bits)));
    const std::uint64_t top = (std::uint64_t{1} << bits) - 1;
    return std::min(static_cast<std::uint64_t>(scaled), top);
}

double FixedVector::to_value(std::uint64_t raw) const {
    return std::ldexp(static_cast<double>(raw), -static_cast<int>(bits_));
}

unsigned FixedVector::log2_size() const noexcept { return exact_log2(raw_.size()); }

std::uint64_t FixedVector::query(Index i) {
    check_index(i, raw_.size());
    charge(1);
    return raw_[i - 1];
}

void FixedVector::charge(std::uint64_t applications) { ledger_->charge(applications, 0); }

double FixedVector::value(Index i) const {
    check_index(i, raw_.size());
    return to_value(raw_[i - 1]);
}

ThresholdKey FixedVector::key(Index i) const {
    check_index(i, raw_.size());
    return {raw_[i - 1], i};
}

double FixedVector::sum() const {
    // Raw entries are below 2^62 each; accumulate in long double to keep the
    // ground truth exact well past the precision the estimators reach.
    long double s = 0.0L;
    for (auto r : raw_) s += static_cast<long double>(r);
    return static_cast<double>(std::ldexp(s, -static_cast<int>(bits_)));
}

BitStringOracle mask_found(const BitStringOracle& oracle, const SortedIndexList& found) {
    const auto pos = oracle.positions();
    std::vector<std::uint64_t> kept;
    kept.reserve(pos.size());
    auto j = found.begin();
    for (auto p : pos) {
        if (j != found.end() && *j < p + 1)
            throw std::invalid_argument("mask_found: index " + std::to_string(*j) + " is not marked");
        if (j != found.end() && *j == p + 1) {
            ++j;
            continue;
        }
        kept.push_back(p);
    }
    if (j != found.end())
        throw std::invalid_argument("mask_found: index " + std::to_string(*j) + " is not marked");
    QueryCost cost = oracle.cost();
    cost.gates += found.size() * oracle.c_gate() * oracle.log2_size();
    return BitStringOracle(oracle.size(), std::move(kept), oracle.ledger(), cost, oracle.c_gate());
}

BitStringOracle restrict_interval(const BitStringOracle& oracle, Index lo, Index hi) {
    if (hi > oracle.size() + 1 || lo >= hi) throw std::out_of_range("interval bounds outside [0, N+1]");
    if (hi - lo < 2) throw std::invalid_argument("restrict_interval: empty interval");
    const std::uint64_t width = hi - 1 - lo;
    const std::uint64_t domain = std::bit_ceil(width);
    const auto pos = oracle.positions();
    // Index i = p + 1 lies in (lo, hi) iff lo <= p < hi - 1.
    auto first = std::lower_bound(pos.begin(), pos.end(), lo);
    auto last = std::lower_bound(first, pos.end(), hi - 1);
    std::vector<std::uint64_t> sub;
    sub.reserve(static_cast<std::size_t>(last - first));
    for (auto it = first; it != last; ++it) sub.push_back(*it - lo);
    QueryCost cost = oracle.cost();
    cost.gates += oracle.c_gate() * oracle.log2_size();
    return BitStringOracle(domain, std::move(sub), oracle.ledger(), cost, oracle.c_gate());
}

BitStringOracle threshold_oracle(const FixedVector& v, ThresholdKey z) {
    const auto raw = v.raw();
    std::vector<std::uint64_t> pos;
    for (std::uint64_t p = 0; p < raw.size(); ++p)
        if (ThresholdKey{raw[p], p + 1} >= z) pos.push_back(p);
    // Compute v_i, compare, uncompute.
    const QueryCost cost{2, v.c_gate() * v.bit_width()};
    return BitStringOracle(v.size(), std::move(pos), v.ledger(), cost, v.c_gate());
}

unsigned rescale_precision_bits(std::uint64_t n, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::domain_error("delta must lie in (0, 1)");
    return static_cast<unsigned>(std::ceil(std::log2(4.0 * static_cast<double>(n) / delta)));
}

double rescaled_amplitude(const FixedVector& v, ThresholdKey z, double delta) {
    if (z.raw == 0) throw std::domain_error("rescaled_amplitude: threshold must be positive");
    const unsigned bits = rescale_precision_bits(v.size(), delta);
    const double grid = std::ldexp(1.0, static_cast<int>(bits));
    const double zr = static_cast<double>(z.raw);
    const auto raw = v.raw();
    double total = 0.0;
    for (std::uint64_t p = 0; p < raw.size(); ++p) {
        if (ThresholdKey{raw[p], p + 1} >= z) continue;
        const double w = std::min(1.0, static_cast<double>(raw[p]) / zr);
        const double alpha = std::round(std::asin(std::sqrt(w)) * grid) / grid;
        const double s = std::sin(alpha);
        total += s * s;
    }
    return total / static_cast<double>(raw.size());
}

} // namespace qfind
