// Command-line entry point: single-algorithm runs, parameter sweeps and the
// bound-verification suites.

#include "qfind/harness/csv.hpp"
#include "qfind/harness/sweep.hpp"
#include "qfind/harness/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>

namespace {

using namespace qfind;
using namespace qfind::harness;

struct Common {
    std::uint64_t trials = 1;
    std::uint64_t seed = 1;
    std::string out;
    std::string input;
    Backend backend = Backend::rotation;
    unsigned threads = 0;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--trials", c.trials, "Independent trials")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", c.seed, "Master seed");
    cmd->add_option("--out", c.out, "CSV output path (default: standard output)");
    cmd->add_option("--input", c.input, "Instance file replacing the random generator");
    cmd->add_option("--threads", c.threads, "Worker threads (0: all cores)");
    const std::map<std::string, Backend> backends{{"rotation", Backend::rotation}, {"dense", Backend::dense}};
    cmd->add_option("--backend", c.backend, "Simulation backend")->transform(CLI::CheckedTransformer(backends));
}

// Runs a spec, streams CSV and prints a short summary on stderr.
int run_sweep(SweepSpec spec, const Common& c) {
    Config cfg;
    cfg.backend = c.backend;
    std::unique_ptr<std::ofstream> file;
    if (!spec.output.empty()) {
        file = std::make_unique<std::ofstream>(spec.output);
        if (!*file) throw std::runtime_error("cannot write " + spec.output);
    }
    std::ostream& os = file ? static_cast<std::ostream&>(*file) : std::cout;
    CsvWriter writer(os);
    std::uint64_t successes = 0;
    double queries = 0.0;
    const auto summary = run_trials(
        spec,
        [&](const TrialRecord& r) {
            writer.write(r);
            successes += r.success;
            queries += static_cast<double>(r.queries);
        },
        cfg, c.threads);
    os.flush();
    if (!os) throw std::runtime_error("write failed");
    if (summary.records > 0)
        std::cerr << spec.algorithm << ": " << summary.records << " trials, success " << successes << "/"
                  << summary.records << ", mean queries " << queries / static_cast<double>(summary.records) << '\n';
    for (const auto& e : summary.cell_errors) std::cerr << "error: " << e << '\n';
    return summary.cell_errors.empty() ? 0 : 1;
}

SweepSpec single_cell(const std::string& algorithm, const Common& c) {
    SweepSpec spec;
    spec.algorithm = algorithm;
    spec.trials = c.trials;
    spec.seed = c.seed;
    spec.output = c.out;
    spec.input = c.input;
    return spec;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum search, counting and summing simulator"};
    app.require_subcommand(1);

    std::uint64_t n = 1024, k = 1;
    double rho = 0.05, delta = 0.1;
    std::optional<double> lambda, p;
    std::string mode = "query-optimal";

    Common multi_opts, sum_opts, count_opts, sweep_opts, verify_opts;

    auto* multi = app.add_subcommand("multifind", "Find every marked element (weight estimate + two-stage search)");
    multi->add_option("--n", n, "Domain size (power of two)");
    multi->add_option("--k", k, "Number of marked elements");
    multi->add_option("--rho", rho, "Failure probability");
    multi->add_option("--lambda", lambda, "Sampling ratio lambda (default: lambda*)");
    add_common(multi, multi_opts);

    auto* sum = app.add_subcommand("approx-sum", "Approximate the sum of a vector in [0,1)^N");
    sum->add_option("--n", n, "Vector length (power of two)");
    sum->add_option("--delta", delta, "Relative error");
    sum->add_option("--rho", rho, "Failure probability");
    sum->add_option("--p", p, "Quantile fraction (default: chosen by --mode)");
    sum->add_option("--lambda", lambda, "Sampling ratio lambda (default: chosen by --mode)");
    sum->add_option("--mode", mode, "Parameter choice")->check(CLI::IsMember({"query-optimal", "simple"}));
    add_common(sum, sum_opts);

    auto* count = app.add_subcommand("count", "Estimate the number of marked elements within a factor 3/2");
    count->add_option("--n", n, "Domain size (power of two)");
    count->add_option("--k", k, "Number of marked elements");
    count->add_option("--rho", rho, "Failure probability");
    add_common(count, count_opts);

    std::string spec_path;
    auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep described by a key=value file");
    sweep->add_option("spec", spec_path, "Sweep file (key = value lines)")->required()->check(CLI::ExistingFile);
    sweep->add_option("--out", sweep_opts.out, "CSV output path (overrides the sweep file)");
    sweep->add_option("--seed", sweep_opts.seed, "Master seed (overrides the sweep file)");
    sweep->add_option("--trials", sweep_opts.trials, "Trials per cell (overrides the sweep file)");
    sweep->add_option("--threads", sweep_opts.threads, "Worker threads (0: all cores)");
    const std::map<std::string, Backend> backends{{"rotation", Backend::rotation}, {"dense", Backend::dense}};
    sweep->add_option("--backend", sweep_opts.backend, "Simulation backend")
        ->transform(CLI::CheckedTransformer(backends));

    std::string suite;
    auto* verify = app.add_subcommand("verify", "Run a bound-verification suite");
    verify->add_option("suite", suite, "Suite name or 'all'")->required();
    verify->add_option("--seed", verify_opts.seed, "Master seed");
    verify->add_option("--trials", verify_opts.trials, "Override each suite's trial count");
    verify->add_option("--threads", verify_opts.threads, "Worker threads (0: all cores)");
    verify->add_option("--backend", verify_opts.backend, "Simulation backend")
        ->transform(CLI::CheckedTransformer(backends));
    verify_opts.trials = 0;

    CLI11_PARSE(app, argc, argv);

    try {
        if (multi->parsed()) {
            auto spec = single_cell("multiple_fast", multi_opts);
            spec.n = {n};
            spec.k = {k};
            spec.rho = {rho};
            spec.lambda = {lambda};
            return run_sweep(spec, multi_opts);
        }
        if (sum->parsed()) {
            auto spec = single_cell(mode == "simple" ? "approx_sum_simple" : "approx_sum", sum_opts);
            spec.n = {n};
            spec.rho = {rho};
            spec.delta = {delta};
            spec.lambda = {lambda};
            spec.p = {p};
            return run_sweep(spec, sum_opts);
        }
        if (count->parsed()) {
            auto spec = single_cell("count", count_opts);
            spec.n = {n};
            spec.k = {k};
            spec.rho = {rho};
            return run_sweep(spec, count_opts);
        }
        if (sweep->parsed()) {
            auto spec = load_sweep_spec(spec_path);
            if (!sweep_opts.out.empty()) spec.output = sweep_opts.out;
            if (sweep->count("--seed")) spec.seed = sweep_opts.seed;
            if (sweep->count("--trials")) spec.trials = sweep_opts.trials;
            return run_sweep(spec, sweep_opts);
        }
        VerifyOptions vo;
        if (verify->count("--seed")) vo.seed = verify_opts.seed;
        vo.trials = verify_opts.trials;
        vo.threads = verify_opts.threads;
        vo.config.backend = verify_opts.backend;
        std::vector<std::string> suites;
        if (suite == "all") suites = verify_suites();
        else suites = {suite};
        bool all_pass = true;
        for (const auto& s : suites) {
            const auto report = verify_bounds(s, vo);
            print_report(std::cout, report);
            all_pass = all_pass && report.pass();
        }
        return all_pass ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
