#include "qfind/harness/sweep.hpp"

#include "qfind/counting.hpp"
#include "qfind/grover.hpp"
#include "qfind/multifind.hpp"
#include "qfind/oracle_io.hpp"
#include "qfind/summing.hpp"
#include "qfind/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace qfind::harness {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw std::runtime_error("sweep spec: empty grid entry in '" + s + "'");
        out.push_back(item);
    }
    if (out.empty()) throw std::runtime_error("sweep spec: empty grid");
    return out;
}

template <class T>
T parse_value(const std::string& s, const std::string& key) {
    T v{};
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size())
        throw std::runtime_error("sweep spec: bad value '" + s + "' for " + key);
    return v;
}

template <class T>
std::vector<T> parse_grid(const std::string& s, const std::string& key) {
    std::vector<T> out;
    for (const auto& item : split_list(s)) out.push_back(parse_value<T>(item, key));
    return out;
}

std::vector<std::optional<double>> parse_auto_grid(const std::string& s, const std::string& key) {
    std::vector<std::optional<double>> out;
    for (const auto& item : split_list(s)) {
        if (item == "auto") out.emplace_back(std::nullopt);
        else out.emplace_back(parse_value<double>(item, key));
    }
    return out;
}

bool uses_vector(const std::string& algorithm) {
    return algorithm == "max_find" || algorithm == "quantile" || algorithm == "approx_sum" ||
           algorithm == "approx_sum_simple" || algorithm == "mean_baseline";
}

double relative_error(double estimate, double truth) {
    if (truth == 0.0) return std::abs(estimate);
    return std::abs(estimate - truth) / truth;
}

} // namespace

const std::vector<std::string>& sweep_algorithms() {
    static const std::vector<std::string> names{
        "grover_certainty", "grover_expectation", "grover_23",     "max_find",   "count",
        "certainty_multiple", "coupon",           "multiple_fast", "quantile",   "approx_sum",
        "approx_sum_simple", "mean_baseline"};
    return names;
}

SweepSpec parse_sweep_spec(std::istream& in) {
    SweepSpec spec;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("sweep spec line " + std::to_string(lineno) + ": expected key = value");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (!seen.insert(key).second) throw std::runtime_error("sweep spec: duplicate key " + key);
        if (key == "algorithm") spec.algorithm = value;
        else if (key == "n" || key == "N") spec.n = parse_grid<std::uint64_t>(value, key);
        else if (key == "k") spec.k = parse_grid<std::uint64_t>(value, key);
        else if (key == "rho") spec.rho = parse_grid<double>(value, key);
        else if (key == "delta") spec.delta = parse_grid<double>(value, key);
        else if (key == "lambda") spec.lambda = parse_auto_grid(value, key);
        else if (key == "p") spec.p = parse_auto_grid(value, key);
        else if (key == "trials") spec.trials = parse_value<std::uint64_t>(value, key);
        else if (key == "seed") spec.seed = parse_value<std::uint64_t>(value, key);
        else if (key == "output") spec.output = value;
        else if (key == "input") spec.input = value;
        else throw std::runtime_error("sweep spec: unknown key " + key);
    }
    const auto& names = sweep_algorithms();
    if (std::find(names.begin(), names.end(), spec.algorithm) == names.end())
        throw std::runtime_error("sweep spec: unknown algorithm '" + spec.algorithm + "'");
    if (spec.trials < 1) throw std::runtime_error("sweep spec: trials must be >= 1");
    return spec;
}

SweepSpec load_sweep_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_sweep_spec(in);
}

std::vector<Cell> expand_cells(const SweepSpec& spec) {
    std::vector<Cell> cells;
    for (auto n : spec.n)
        for (auto k : spec.k)
            for (auto rho : spec.rho)
                for (auto delta : spec.delta)
                    for (const auto& lambda : spec.lambda)
                        for (const auto& p : spec.p)
                            cells.push_back({spec.algorithm, n, k, rho, delta, lambda, p});
    return cells;
}

std::vector<std::uint64_t> random_support(std::uint64_t n, std::uint64_t k, Rng& rng) {
    if (k > n) throw std::invalid_argument("cannot mark more than N elements");
    // Floyd's sampling: k draws, no rejection loop.
    std::vector<std::uint64_t> out;
    out.reserve(k);
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(k * 2);
    for (std::uint64_t j = n - k + 1; j <= n; ++j) {
        const auto r = rng.below(j) + 1;
        const auto pick = chosen.insert(r).second ? r : j;
        if (pick == j) chosen.insert(j);
        out.push_back(pick);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::uint64_t> random_vector(std::uint64_t n, unsigned bits, Rng& rng) {
    std::vector<std::uint64_t> raw(n);
    for (auto& r : raw) r = rng.next_u64() >> (64 - bits);
    return raw;
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t cell, std::uint64_t trial) {
    return derive_seed(master, cell, trial);
}

TrialRecord run_trial(const Cell& cell, std::uint64_t trial, std::uint64_t seed, const Config& cfg,
                      const FixedInstance* fixed) {
    TrialRecord rec;
    rec.algorithm = cell.algorithm;
    rec.trial = trial;
    rec.seed = seed;
    Rng inst_rng(derive_seed(seed, 1));
    Rng rng(seed);
    QueryLedger ledger;

    if (uses_vector(cell.algorithm)) {
        std::vector<std::uint64_t> raw;
        if (fixed && fixed->vector) raw = *fixed->vector;
        else raw = random_vector(cell.n, kVectorBits, inst_rng);
        FixedVector v(std::move(raw), kVectorBits, ledger);
        const std::uint64_t n = v.size();
        rec.n = n;
        const double s = v.sum();

        if (cell.algorithm == "max_find") {
            rec.rho = cell.rho;
            const auto r = max_find_boosted(v, cell.rho, rng, cfg);
            Index best = 1;
            for (Index i = 2; i <= n; ++i)
                if (v.key(i) > v.key(best)) best = i;
            rec.value = static_cast<double>(r.index);
            rec.success = r.index == best;
        } else if (cell.algorithm == "quantile") {
            const double p = cell.p.value_or(0.5);
            rec.rho = cell.rho;
            rec.p = p;
            const auto q = quantile_estimate(v, p, cell.rho, rng, cfg);
            const auto win = quantile_window(n, p, cfg.quantile_c);
            const auto rank = rank_of(v, q.key);
            rec.k = rank;
            rec.value = q.value;
            rec.success = rank >= win.rank_lo && rank <= win.rank_hi;
        } else if (cell.algorithm == "approx_sum" || cell.algorithm == "approx_sum_simple") {
            const auto mode = cell.algorithm == "approx_sum" ? ParamMode::query_optimal : ParamMode::simple;
            auto params = choose_params(n, cell.delta, cell.rho, mode, cfg);
            if (cell.p) params.p = *cell.p;
            if (cell.lambda) params.lambda = *cell.lambda;
            rec.rho = cell.rho;
            rec.delta = cell.delta;
            rec.p = params.p;
            rec.lambda = params.lambda;
            const auto e = approx_sum(v, cell.delta, params.p, params.lambda, cell.rho, rng, cfg);
            rec.k = e.found;
            rec.value = e.value;
            rec.error = relative_error(e.value, s);
            rec.success = *rec.error <= cell.delta;
        } else {
            rec.rho = cell.rho;
            rec.delta = cell.delta;
            const auto e = mean_estimate_baseline(v, cell.delta, cell.rho, rng, cfg);
            rec.value = e.value * static_cast<double>(n);
            rec.error = relative_error(*rec.value, s);
            rec.success = *rec.error <= cell.delta;
        }
        rec.queries = ledger.oracle_queries;
        rec.analytic_gates = ledger.analytic_gates;
        return rec;
    }

    auto oracle = fixed && fixed->bits
                      ? BitStringOracle::from_bits(*fixed->bits, ledger)
                      : BitStringOracle::from_support(cell.n, random_support(cell.n, cell.k, inst_rng), ledger);
    const std::uint64_t n = oracle.size(), k = oracle.weight();
    rec.n = n;
    rec.k = k;

    if (cell.algorithm == "grover_certainty") {
        const auto out = grover_certainty(oracle, k, rng, cfg);
        rec.value = static_cast<double>(*out.index);
        rec.success = out.verified;
    } else if (cell.algorithm == "grover_expectation" || cell.algorithm == "grover_23") {
        const auto out = cell.algorithm == "grover_23" ? grover_23(oracle, std::max<std::uint64_t>(1, k), rng, cfg)
                                                       : grover_expectation(oracle, rng, 0, cfg);
        if (out.index) rec.value = static_cast<double>(*out.index);
        rec.success = out.verified;
    } else if (cell.algorithm == "count") {
        rec.rho = cell.rho;
        const auto e = estimate_k_32(oracle, cell.rho, rng, cfg);
        const double kd = static_cast<double>(k);
        rec.value = e.value;
        rec.error = relative_error(e.value, kd);
        rec.success = k == 0 ? e.value == 0.0 : (e.value >= kd / 2.0 && e.value <= 1.5 * kd);
    } else if (cell.algorithm == "certainty_multiple") {
        const auto r = grover_certainty_multiple(oracle, std::max<std::uint64_t>(1, k), rng, cfg);
        rec.value = static_cast<double>(r.found.size());
        rec.success = r.success;
    } else if (cell.algorithm == "coupon") {
        if (k == 0) throw std::invalid_argument("coupon needs k >= 1");
        rec.rho = cell.rho;
        const std::uint64_t t = std::max<std::uint64_t>(1, k / 2);
        const auto rounds = static_cast<std::uint64_t>(std::ceil(analysis::coupon_budget(t, k, cell.rho)));
        const auto r = grover_coupon(oracle, rounds, k, t, rng, cfg);
        rec.value = static_cast<double>(r.rounds);
        rec.success = r.found.size() == t;
    } else if (cell.algorithm == "multiple_fast") {
        rec.rho = cell.rho;
        // Half of the failure budget for the weight estimate, half for the search.
        const auto k_est = static_cast<std::uint64_t>(estimate_k_32(oracle, cell.rho / 2.0, rng, cfg).value);
        const double lambda = cell.lambda.value_or(k_est > 0 ? lambda_star(k_est, cell.rho / 2.0) : 0.0);
        const auto r = find_all_marked(oracle, k_est, cell.rho / 2.0, lambda, rng, cfg);
        rec.lambda = lambda;
        rec.value = static_cast<double>(r.found.size());
        rec.success = r.success;
    }
    rec.queries = ledger.oracle_queries;
    rec.analytic_gates = ledger.analytic_gates;
    return rec;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    const std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

SweepSummary run_trials(const SweepSpec& spec, const std::function<void(const TrialRecord&)>& sink,
                        const Config& cfg, unsigned threads) {
    FixedInstance fixed;
    const FixedInstance* fixed_ptr = nullptr;
    if (!spec.input.empty()) {
        if (uses_vector(spec.algorithm)) fixed.vector = read_vector_file(spec.input, kVectorBits);
        else fixed.bits = read_bits_file(spec.input);
        fixed_ptr = &fixed;
    }

    const auto cells = expand_cells(spec);
    SweepSummary summary;
    // Trials of one cell run in parallel blocks; records are emitted in
    // order once a block completes, so output never depends on scheduling.
    constexpr std::size_t kBlock = 256;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        std::vector<TrialRecord> block;
        std::vector<std::string> errors;
        std::mutex error_mutex;
        bool failed = false;
        for (std::uint64_t first = 0; first < spec.trials && !failed; first += kBlock) {
            const auto size = static_cast<std::size_t>(std::min<std::uint64_t>(kBlock, spec.trials - first));
            block.assign(size, TrialRecord{});
            parallel_for(size, threads, [&](std::size_t i) {
                const auto trial = first + i;
                try {
                    block[i] = run_trial(cells[c], trial, trial_seed(spec.seed, c, trial), cfg, fixed_ptr);
                } catch (const std::exception& e) {
                    const std::lock_guard lock(error_mutex);
                    errors.push_back(e.what());
                }
            });
            if (!errors.empty()) {
                failed = true;
                break;
            }
            for (const auto& r : block) sink(r);
            summary.records += block.size();
        }
        if (failed) {
            std::ostringstream os;
            os << "cell " << c << " (" << cells[c].algorithm << ", N=" << cells[c].n << ", k=" << cells[c].k
               << "): " << errors.front();
            summary.cell_errors.push_back(os.str());
        }
    }
    return summary;
}

} // namespace qfind::harness
