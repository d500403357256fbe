#include "qfind/harness/verify.hpp"

#include "qfind/analysis.hpp"
#include "qfind/counting.hpp"
#include "qfind/grover.hpp"
#include "qfind/harness/stats.hpp"
#include "qfind/harness/sweep.hpp"
#include "qfind/multifind.hpp"
#include "qfind/qsim.hpp"
#include "qfind/summing.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qfind::harness {

namespace {

using analysis::BudgetParams;

// Suite identifiers feed the seed derivation so suites never share streams.
enum SuiteId : std::uint64_t {
    kGroverExact = 1,
    kAmpEst,
    kCounting,
    kCoupon,
    kMultifind,
    kSumming,
    kOracle,
};

std::string num(double x, int precision = 4) {
    std::ostringstream os;
    os << std::setprecision(precision) << x;
    return os.str();
}

class Report {
public:
    explicit Report(std::string suite) { report_.suite = std::move(suite); }

    void add(std::string name, bool pass, std::string detail) {
        report_.checks.push_back({std::move(name), pass, std::move(detail)});
    }
    void add_rate(std::string name, const RateCheck& rc) { add(std::move(name), rc.pass, rc.describe()); }

    VerifyReport finish(std::chrono::steady_clock::time_point start) {
        report_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return std::move(report_);
    }

private:
    VerifyReport report_;
};

std::uint64_t trials_or(const VerifyOptions& o, std::uint64_t fallback) { return o.trials ? o.trials : fallback; }

double mean(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

std::string fit_detail(const LinearFit& f, double lo, double hi) {
    return "slope " + num(f.slope) + " in [" + num(lo) + ", " + num(hi) + "], R^2 " + num(f.r_squared) + ", " +
           std::to_string(f.points) + " points";
}

double binomial(std::uint64_t n, std::uint64_t r) {
    double c = 1.0;
    for (std::uint64_t i = 1; i <= r; ++i) c = c * static_cast<double>(n - r + i) / static_cast<double>(i);
    return c;
}

// ---------------------------------------------------------------- grover_exact

VerifyReport suite_grover_exact(const VerifyOptions& o) {
    const auto start = std::chrono::steady_clock::now();
    Report rep("grover_exact");
    constexpr std::uint64_t kPairs = 200;
    const std::uint64_t per_pair = trials_or(o, 20);

    struct Job {
        std::uint64_t n, k;
        double analytic = 0.0, dense = 1.0;
        std::uint64_t trials = 0, verified = 0, bad_charge = 0, dense_trials = 0, dense_verified = 0;
        bool over_budget = false;
    };
    std::vector<Job> jobs;
    for (unsigned e = 3; e <= 12; ++e) {
        const std::uint64_t n = std::uint64_t{1} << e;
        Rng pick(derive_seed(o.seed, kGroverExact, e));
        for (std::uint64_t j = 0; j < kPairs; ++j) jobs.push_back({n, 1 + pick.below(n)});
    }

    parallel_for(jobs.size(), o.threads, [&](std::size_t idx) {
        auto& job = jobs[idx];
        Rng rng(derive_seed(o.seed, kGroverExact, 100 + idx));
        const auto sched = exact_grover_schedule(job.n, job.k);
        job.analytic = grover_success_prob(job.n, job.k, sched.iterations, sched.amp_scale);
        const double nominal = std::ceil(std::numbers::pi / 4.0 * std::sqrt(double(job.n) / double(job.k)));
        job.over_budget = double(sched.iterations) > nominal;

        auto trial = [&](Backend backend) {
            QueryLedger ledger;
            auto oracle = BitStringOracle::from_support(job.n, random_support(job.n, job.k, rng), ledger);
            Config cfg = o.config;
            cfg.backend = backend;
            const auto out = grover_certainty(oracle, job.k, rng, cfg);
            if (ledger.oracle_queries != sched.iterations + 1) ++job.bad_charge;
            return out.verified && out.index && oracle.bit(*out.index);
        };
        for (std::uint64_t t = 0; t < per_pair; ++t) {
            ++job.trials;
            job.verified += trial(Backend::rotation);
        }
        if (job.n <= 256) {
            const auto support = random_support(job.n, job.k, rng);
            std::vector<std::uint64_t> pos;
            for (auto i : support) pos.push_back(i - 1);
            job.dense = dense_success_prob(job.n, pos, sched.iterations, sched.amp_scale);
            for (int t = 0; t < 2; ++t) {
                ++job.dense_trials;
                job.dense_verified += trial(Backend::dense);
            }
        }
    });

    double min_p = 1.0, max_dense_dev = 0.0, max_cross = 0.0;
    std::uint64_t trials = 0, verified = 0, bad_charge = 0, dtrials = 0, dverified = 0, over = 0;
    for (const auto& j : jobs) {
        min_p = std::min(min_p, j.analytic);
        trials += j.trials;
        verified += j.verified;
        bad_charge += j.bad_charge;
        dtrials += j.dense_trials;
        dverified += j.dense_verified;
        over += j.over_budget;
        if (j.n <= 256) {
            max_dense_dev = std::max(max_dense_dev, std::abs(j.dense - 1.0));
            max_cross = std::max(max_cross, std::abs(j.dense - j.analytic));
        }
    }
    const std::string grid = std::to_string(jobs.size()) + " (N, k) pairs, N = 2^3..2^12";
    rep.add("analytic success probability is 1", min_p >= 1.0 - 1e-12,
            "min " + num(1.0 - min_p, 3) + " below 1 over " + grid);
    rep.add("every trial returns a marked index", verified == trials,
            std::to_string(verified) + "/" + std::to_string(trials) + " trials verified (hard)");
    rep.add("dense backend cross-check within 1e-9", max_dense_dev <= 1e-9 && max_cross <= 1e-9,
            "max |p_dense - 1| = " + num(max_dense_dev, 3) + ", max |p_dense - p_rotation| = " + num(max_cross, 3) +
                " for N <= 256");
    rep.add("dense-backend trials return a marked index", dverified == dtrials,
            std::to_string(dverified) + "/" + std::to_string(dtrials) + " trials verified (hard)");
    rep.add("queries charged = iterations + 1", bad_charge == 0,
            std::to_string(bad_charge) + " of " + std::to_string(trials + dtrials) + " trials mischarged");
    rep.add("iterations <= ceil(pi/4 sqrt(N/k))", over == 0, std::to_string(over) + " pairs over the nominal count");
    return rep.finish(start);
}

// ---------------------------------------------------------------- ampest

VerifyReport suite_ampest(const VerifyOptions& o) {
    const auto start = std::chrono::steady_clock::now();
    Report rep("ampest");
    const std::uint64_t samples = trials_or(o, 100000);
    const std::vector<double> as{0.01, 0.1, 0.3, 0.5, 0.9};
    const std::vector<std::uint64_t> ms{16, 64, 256};
    const double target = 8.0 / (std::numbers::pi * std::numbers::pi);

    std::vector<std::uint64_t> hits(as.size() * ms.size());
    parallel_for(hits.size(), o.threads, [&](std::size_t cell) {
        const double a = as[cell / ms.size()];
        const auto m = ms[cell % ms.size()];
        const double md = static_cast<double>(m);
        const double bound = 2.0 * std::numbers::pi * std::sqrt(a * (1.0 - a)) / md +
                             std::numbers::pi * std::numbers::pi / (md * md);
        Rng rng(derive_seed(o.seed, kAmpEst, cell));
        std::uint64_t h = 0;
        for (std::uint64_t s = 0; s < samples; ++s) h += std::abs(amp_est_sample(a, m, rng).value - a) <= bound;
        hits[cell] = h;
    });
    for (std::size_t cell = 0; cell < hits.size(); ++cell) {
        const double a = as[cell / ms.size()];
        const auto m = ms[cell % ms.size()];
        rep.add_rate("a=" + num(a) + " M=" + std::to_string(m) + " within error bound",
                     rate_at_least(hits[cell], samples, target));
    }

    // Oracle-level accounting: 2M applications and c_gate log2 N gates per grid point.
    QueryLedger ledger;
    Rng rng(derive_seed(o.seed, kAmpEst, 999));
    auto oracle = BitStringOracle::from_support(1024, random_support(1024, 100, rng), ledger);
    const auto est = amp_est(oracle, 64, rng);
    rep.add("amp_est charges 2M queries and M log2 N gates",
            ledger.oracle_queries == 2 * est.grid && ledger.analytic_gates == 10 * est.grid,
            std::to_string(ledger.oracle_queries) + " queries, " + std::to_string(ledger.analytic_gates) +
                " gates at M = " + std::to_string(est.grid) + ", N = 1024");
    return rep.finish(start);
}

// ---------------------------------------------------------------- counting

VerifyReport suite_counting(const VerifyOptions& o) {
    const auto start = std::chrono::steady_clock::now();
    Report rep("counting");
    const std::uint64_t n = 4096, trials = trials_or(o, 10000);
    const double rho = 0.05;
    const std::vector<std::uint64_t> ks{0, 1, 64, 2048};

    for (std::size_t c = 0; c < ks.size(); ++c) {
        const auto k = ks[c];
        std::vector<double> est(trials), queries(trials);
        parallel_for(trials, o.threads, [&](std::size_t t) {
            Rng rng(derive_seed(o.seed, kCounting, c * trials + t));
            QueryLedger ledger;
            auto oracle = BitStringOracle::from_support(n, random_support(n, k, rng), ledger);
            est[t] = estimate_k_32(oracle, rho, rng, o.config).value;
            queries[t] = static_cast<double>(ledger.oracle_queries);
        });
        const double kd = static_cast<double>(k);
        std::uint64_t inside = 0;
        for (double e : est) inside += k == 0 ? e == 0.0 : (e >= kd / 2.0 && e <= 1.5 * kd);
        const std::string cell = "N=4096 k=" + std::to_string(k) + " rho=0.05";
        if (k == 0) {
            rep.add(cell + " returns 0 on every trial", inside == trials,
                    std::to_string(inside) + "/" + std::to_string(trials) + " zero estimates (hard), mean queries " +
                        num(mean(queries)));
        } else {
            auto rc = rate_at_least(inside, trials, 1.0 - rho);
            rep.add(cell + " estimate in [k/2, 3k/2]", rc.pass, rc.describe() + ", mean queries " + num(mean(queries)));
        }
    }
    return rep.finish(start);
}

// ---------------------------------------------------------------- coupon

VerifyReport suite_coupon(const VerifyOptions& o) {
    const auto start = std::chrono::steady_clock::now();
    Report rep("coupon");
    const std::uint64_t n = 1024, trials = trials_or(o, 10000);

    struct CellSpec {
        std::uint64_t k, t;
        double rho;
    };
    std::vector<CellSpec> cells;
    for (std::uint64_t k : {2, 4, 8, 12, 32}) {
        std::vector<std::uint64_t> ts{1, (k + 3) / 4, k / 2};
        std::sort(ts.begin(), ts.end());
        ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
        for (double rho : {0.1, 0.01})
            for (auto t : ts)
                if (t >= 1 && 2 * t <= k) cells.push_back({k, t, rho});
    }

    for (std::size_t c = 0; c < cells.size(); ++c) {
        const auto [k, t, rho] = cells[c];
        const double budget = analysis::coupon_budget(t, k, rho);
        const auto cap = static_cast<std::uint64_t>(std::ceil(budget)) * 20 + 100;
        std::vector<std::uint64_t> rounds(trials), subset(trials);
        std::vector<char> complete(trials);
        parallel_for(trials, o.threads, [&](std::size_t i) {
            Rng rng(derive_seed(o.seed, kCoupon, c * trials + i));
            QueryLedger ledger;
            const auto support = random_support(n, k, rng);
            auto oracle = BitStringOracle::from_support(n, support, ledger);
            const auto res = grover_coupon(oracle, cap, k, t, rng, o.config);
            rounds[i] = res.rounds;
            complete[i] = res.found.size() == t;
            std::uint64_t mask = 0;
            for (auto idx : res.found) {
                const auto rank = std::lower_bound(support.begin(), support.end(), idx) - support.begin();
                mask |= std::uint64_t{1} << rank;
            }
            subset[i] = mask;
        });
        std::uint64_t exceed = 0, incomplete = 0;
        for (std::uint64_t i = 0; i < trials; ++i) {
            exceed += !complete[i] || static_cast<double>(rounds[i]) > budget;
            incomplete += !complete[i];
        }
        const std::string cell = "k=" + std::to_string(k) + " t=" + std::to_string(t) + " rho=" + num(rho);
        auto rc = rate_at_most(exceed, trials, rho);
        rep.add(cell + " Pr[rounds > R=" + num(budget) + "]", rc.pass,
                rc.describe() + (incomplete ? ", " + std::to_string(incomplete) + " runs hit the safety cap" : ""));

        const double categories = binomial(k, t);
        if (categories * 5.0 <= static_cast<double>(trials)) {
            std::map<std::uint64_t, std::uint64_t> counts;
            for (std::uint64_t i = 0; i < trials; ++i)
                if (complete[i]) ++counts[subset[i]];
            std::vector<std::uint64_t> table;
            for (const auto& [mask, cnt] : counts) table.push_back(cnt);
            table.resize(static_cast<std::size_t>(categories), 0);
            const auto chi = chi_square_uniform(table);
            rep.add(cell + " t-subsets uniform (chi^2, alpha 0.001)", chi.p_value >= 0.001,
                    "chi^2 " + num(chi.statistic) + " on " + num(chi.dof) + " dof, p = " + num(chi.p_value, 3) +
                        ", " + std::to_string(trials - incomplete) + " subsets");
        }
    }
    return rep.finish(start);
}

// ---------------------------------------------------------------- run_length

VerifyReport suite_run_length(const VerifyOptions&) {
    const auto start = std::chrono::steady_clock::now();
    Report rep("run_length");

    std::uint64_t checked = 0, violations = 0;
    std::string worst;
    double worst_slack = 1.0;
    for (std::uint64_t k = 1; k <= 32; ++k)
        for (std::uint64_t t = 1; t < k; ++t)
            for (std::uint64_t ell = 1; ell <= k - t; ++ell) {
                const double exact = analysis::run_probability_exact(k, t, ell);
                const double bound = analysis::run_length_bound(k, t, ell);
                ++checked;
                if (exact > bound + 1e-12) ++violations;
                if (bound - exact < worst_slack) {
                    worst_slack = bound - exact;
                    worst = "k=" + std::to_string(k) + " t=" + std::to_string(t) + " l=" + std::to_string(ell);
                }
            }
    rep.add("exact run probability <= bound for k <= 32", violations == 0,
            std::to_string(violations) + " violations in " + std::to_string(checked) +
                " valid (k, t, l) triples (1 <= l <= k - t, tolerance 1e-12); tightest slack " + num(worst_slack, 3) + " at " + worst);

    // Cross-check the dynamic program against brute-force enumeration.
    double max_dev = 0.0;
    std::uint64_t compared = 0;
    for (std::uint64_t k = 1; k <= 16; ++k) {
        // longest[t][ell]: subsets of size t whose complement has a run >= ell.
        std::vector<std::vector<double>> runs(k + 1, std::vector<double>(k + 2, 0.0));
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
            std::uint64_t longest = 0, cur = 0;
            for (std::uint64_t b = 0; b < k; ++b) {
                cur = (mask >> b & 1) ? 0 : cur + 1;
                longest = std::max(longest, cur);
            }
            const auto t = static_cast<std::uint64_t>(std::popcount(mask));
            for (std::uint64_t ell = 1; ell <= longest; ++ell) runs[t][ell] += 1.0;
        }
        for (std::uint64_t t = 1; t <= k; ++t)
            for (std::uint64_t ell = 1; ell <= k; ++ell) {
                const double brute = runs[t][ell] / binomial(k, t);
                max_dev = std::max(max_dev, std::abs(brute - analysis::run_probability_exact(k, t, ell)));
                ++compared;
            }
    }
    rep.add("dynamic program matches enumeration for k <= 16", max_dev <= 1e-12,
            "max deviation " + num(max_dev, 3) + " over " + std::to_string(compared) + " cases");
    return rep.finish(start);
}

// ---------------------------------------------------------------- multifind

VerifyReport suite_multifind(const VerifyOptions& o) {
    const auto start = std::chrono::steady_clock::now();
    Report rep("multifind");
    const std::uint64_t n = 65536, trials = trials_or(o, 2000);
    const double rho = 0.05;
    const std::vector<std::uint64_t> ks{4, 16, 64, 256};

    struct Mode {
        std::string name;
        double lambda;  // 0: lambda_star of the estimate
    };
    const std::vector<Mode> modes{{"lambda=lambda*", 0.0}, {"lambda=6", 6.0}};

    for (std::size_t mi = 0; mi < modes.size(); ++mi) {
        const auto& mode = modes[mi];
        std::vector<double> cell_k, cell_q;
        std::vector<double> ratios;
        for (std::size_t c = 0; c < ks.size(); ++c) {
            const auto k = ks[c];
            std::vector<double> find_q(trials), budget(trials);
            std::vector<char> ok(trials), sound(trials), fallback(trials);
            parallel_for(trials, o.threads, [&](std::size_t i) {
                Rng rng(derive_seed(o.seed, kMultifind, (mi * ks.size() + c) * trials + i));
                QueryLedger ledger;
                const auto support = random_support(n, k, rng);
                auto oracle = BitStringOracle::from_support(n, support, ledger);
                // rho/2 for the weight estimate, rho/2 for the search.
                const auto k_est =
                    static_cast<std::uint64_t>(estimate_k_32(oracle, rho / 2.0, rng, o.config).value);
                const auto before = ledger.oracle_queries;
                const double lambda =
                    mode.lambda > 0.0 ? mode.lambda : (k_est > 0 ? lambda_star(k_est, rho / 2.0) : 1.0);
                const auto res = find_all_marked(oracle, k_est, rho / 2.0, lambda, rng, o.config);
                find_q[i] = static_cast<double>(ledger.oracle_queries - before);
                ok[i] = res.success;
                fallback[i] = res.fallback;
                sound[i] = std::all_of(res.found.begin(), res.found.end(), [&](Index j) {
                    return std::binary_search(support.begin(), support.end(), j);
                });
                BudgetParams bp;
                bp.n = double(n);
                bp.k = double(k);
                bp.rho = rho;
                bp.lambda = lambda;
                budget[i] = analysis::query_budget("multiple_fast", bp).queries;
            });
            std::uint64_t failures = 0, unsound = 0, fallbacks = 0;
            for (std::uint64_t i = 0; i < trials; ++i) {
                failures += !ok[i];
                unsound += !sound[i];
                fallbacks += fallback[i];
                ratios.push_back(find_q[i] / budget[i]);
            }
            const std::string cell = mode.name + " N=65536 k=" + std::to_string(k);
            const double mq = mean(find_q);
            auto rc = rate_at_most(failures, trials, rho);
            rep.add(cell + " failure rate", rc.pass,
                    rc.describe() + ", mean search queries " + num(mq) + ", " + std::to_string(fallbacks) +
                        " trials outside the two-stage regime");
            rep.add(cell + " soundness", unsound == 0,
                    std::to_string(unsound) + "/" + std::to_string(trials) + " trials returned an unmarked index (hard)");
            cell_k.push_back(double(k));
            cell_q.push_back(mq);
        }
        const auto fit = loglog_fit(cell_k, cell_q);
        rep.add(mode.name + " log-queries vs log-k slope", fit.slope >= 0.4 && fit.slope <= 0.6,
                fit_detail(fit, 0.4, 0.6));

        // One fitted constant per mode: the geometric mean of query/budget ratios.
        double log_sum = 0.0;
        for (double r : ratios) log_sum += std::log(r);
        const double fitted = std::exp(log_sum / double(ratios.size()));
        const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
        const bool within = *lo >= fitted / 10.0 && *hi <= fitted * 10.0;
        rep.add(mode.name + " queries within 10x of fitted budget constant", within,
                "fitted constant " + num(fitted) + ", per-trial ratio range [" + num(*lo / fitted) + ", " +
                    num(*hi / fitted) + "] x constant over " + std::to_string(ratios.size()) + " trials");
    }
    return rep.finish(start);
}

// ---------------------------------------------------------------- summing

VerifyReport suite_summing(const VerifyOptions& o) {
    const auto start = std::chrono::steady_clock::now();
    Report rep("summing");
    const std::uint64_t n = 4096, trials = trials_or(o, 2000);
    const std::uint64_t slope_trials = o.trials ? std::max<std::uint64_t>(10, o.trials / 4) : 200;
    const double rho = 0.05;
    const std::vector<std::pair<std::string, ParamMode>> modes{{"query-optimal", ParamMode::query_optimal},
                                                               {"simple", ParamMode::simple}};

    struct Outcome {
        double sum_q = 0, sum_err = 0, base_q = 0, base_err = 0;
    };
    // Every algorithm sees the same instance for a given (cell, trial).
    auto run_cell = [&](double delta, std::uint64_t count, std::uint64_t cell_id, bool both_modes) {
        std::vector<std::vector<Outcome>> out(modes.size(), std::vector<Outcome>(count));
        parallel_for(count, o.threads, [&](std::size_t i) {
            const auto seed = derive_seed(o.seed, kSumming, cell_id * 1000003 + i);
            Rng inst(derive_seed(seed, 1));
            const auto raw = random_vector(n, kVectorBits, inst);
            for (std::size_t m = 0; m < modes.size(); ++m) {
                if (!both_modes && m > 0) break;
                QueryLedger ledger;
                FixedVector v(raw, kVectorBits, ledger);
                const double truth = v.sum();
                Rng rng(derive_seed(seed, 2 + m));
                const auto params = choose_params(n, delta, rho, modes[m].second, o.config);
                const auto e = approx_sum(v, delta, params.p, params.lambda, rho, rng, o.config);
                out[m][i].sum_q = static_cast<double>(ledger.oracle_queries);
                out[m][i].sum_err = std::abs(e.value - truth) / truth;
            }
            QueryLedger ledger;
            FixedVector v(raw, kVectorBits, ledger);
            const double truth = v.sum();
            Rng rng(derive_seed(seed, 9));
            const auto b = mean_estimate_baseline(v, delta, rho, rng, o.config);
            out[0][i].base_q = static_cast<double>(ledger.oracle_queries);
            out[0][i].base_err = std::abs(b.value * double(n) - truth) / truth;
        });
        return out;
    };

    std::uint64_t cell_id = 0;
    for (double delta : {0.1, 0.02}) {
        const auto out = run_cell(delta, trials, cell_id++, true);
        for (std::size_t m = 0; m < modes.size(); ++m) {
            std::uint64_t good = 0;
            std::vector<double> q;
            for (const auto& r : out[m]) {
                good += r.sum_err <= delta;
                q.push_back(r.sum_q);
            }
            auto rc = rate_at_least(good, trials, 1.0 - rho);
            rep.add("approx_sum " + modes[m].first + " N=4096 delta=" + num(delta) + " error <= delta", rc.pass,
                    rc.describe() + ", mean queries " + num(mean(q)));
        }
        std::uint64_t good = 0;
        std::vector<double> q;
        for (const auto& r : out[0]) {
            good += r.base_err <= delta;
            q.push_back(r.base_q);
        }
        auto rc = rate_at_least(good, trials, 1.0 - rho);
        rep.add("baseline N=4096 delta=" + num(delta) + " error <= delta", rc.pass,
                rc.describe() + ", mean queries " + num(mean(q)));
    }

    // Scaling in 1/delta on a nine-point geometric grid from 0.1 down to 0.02.
    std::vector<double> inv_delta;
    std::vector<std::vector<double>> mean_q(modes.size() + 1);
    for (int j = 0; j <= 8; ++j) {
        const double delta = 0.1 * std::pow(5.0, -j / 4.0);
        const auto out = run_cell(delta, slope_trials, cell_id++, true);
        inv_delta.push_back(1.0 / delta);
        for (std::size_t m = 0; m < modes.size(); ++m) {
            std::vector<double> q;
            for (const auto& r : out[m]) q.push_back(r.sum_q);
            mean_q[m].push_back(mean(q));
        }
        std::vector<double> q;
        for (const auto& r : out[0]) q.push_back(r.base_q);
        mean_q[modes.size()].push_back(mean(q));
    }
    const std::string grid = " (" + std::to_string(slope_trials) + " trials per delta)";
    for (std::size_t m = 0; m < modes.size(); ++m) {
        const auto fit = loglog_fit(inv_delta, mean_q[m]);
        rep.add("approx_sum " + modes[m].first + " log-queries vs log(1/delta) slope",
                fit.slope >= 0.4 && fit.slope <= 0.6, fit_detail(fit, 0.4, 0.6) + grid);
    }
    const auto fit = loglog_fit(inv_delta, mean_q[modes.size()]);
    rep.add("baseline log-queries vs log(1/delta) slope", fit.slope >= 0.9 && fit.slope <= 1.1,
            fit_detail(fit, 0.9, 1.1) + grid);
    return rep.finish(start);
}

// ---------------------------------------------------------------- harmonic

VerifyReport suite_harmonic(const VerifyOptions&) {
    const auto start = std::chrono::steady_clock::now();
    Report rep("harmonic");

    constexpr std::uint64_t kExhaustive = 4000;
    const auto table = analysis::harmonic_table(kExhaustive);
    std::uint64_t checked = 0, euler_bad = 0, gap_bad = 0, lin_bad = 0;
    auto tally = [&](const analysis::HarmonicChecks& c) {
        ++checked;
        euler_bad += !c.euler;
        gap_bad += !c.log_gap;
        lin_bad += !c.linear;
    };
    for (std::uint64_t k = 1; k <= kExhaustive; ++k)
        for (std::uint64_t t = 0; t <= k; ++t)
            tally(analysis::harmonic_bounds_check(k, t, table[k], table[k - t]));
    const std::uint64_t exhaustive = checked;

    for (std::uint64_t k : {10000ULL, 30000ULL, 100000ULL, 300000ULL, 1000000ULL}) {
        std::vector<std::uint64_t> ts{0, 1, 2, 3, k / 1000, k / 100, k / 10, k / 4, k / 2, k - 2, k - 1, k};
        for (auto t : ts) tally(analysis::harmonic_bounds_check(k, t));
    }
    const std::string scope = std::to_string(exhaustive) + " exhaustive (k <= 4000, all t) + " +
                              std::to_string(checked - exhaustive) + " grid pairs up to k = 10^6";
    rep.add("H_k - gamma - ln k in [1/(2(k+1)), 1/(2k)]", euler_bad == 0,
            std::to_string(euler_bad) + " violations; " + scope);
    rep.add("H_k - H_{k-t} <= ln(k/(k-t)) + (2k-t+1)/(2k(k-t+1))", gap_bad == 0,
            std::to_string(gap_bad) + " violations; " + scope);
    rep.add("H_k - H_{k-t} <= 2(t+1)/k for t <= k/2", lin_bad == 0,
            std::to_string(lin_bad) + " violations; " + scope);

    long double max_dev = 0.0L;
    for (std::uint64_t k = 1; k <= kExhaustive; ++k)
        max_dev = std::max(max_dev, std::abs((table[k] - table[k - 1]) * static_cast<long double>(k) - 1.0L));
    rep.add("table recurrence H_k - H_{k-1} = 1/k", max_dev <= 1e-12L,
            "max relative deviation " + num(static_cast<double>(max_dev), 3) + " for k <= 4000");
    return rep.finish(start);
}

// ---------------------------------------------------------------- tails

// Pr[S > threshold] for S a sum of independent geometric variables on {1, 2, ...}.
double geometric_sum_tail(const std::vector<double>& ps, double threshold) {
    const auto limit = static_cast<std::size_t>(std::floor(threshold));
    std::vector<double> f(limit + 1, 0.0), g(limit + 1, 0.0);
    f[0] = 1.0;
    for (double p : ps) {
        g[0] = 0.0;
        for (std::size_t s = 1; s <= limit; ++s) g[s] = (1.0 - p) * g[s - 1] + p * f[s - 1];
        std::swap(f, g);
    }
    double cdf = 0.0;
    for (double x : f) cdf += x;
    return std::max(0.0, 1.0 - cdf);
}

VerifyReport suite_tails(const VerifyOptions&) {
    const auto start = std::chrono::steady_clock::now();
    Report rep("tails");

    std::uint64_t checked = 0, violations = 0;
    double worst = 0.0;
    for (std::size_t count : {1, 2, 3, 5, 10, 20, 50})
        for (double p_star : {0.01, 0.05, 0.1, 0.3, 0.5, 0.9})
            for (int spread = 0; spread < 2; ++spread)
                for (double rho : {0.5, 0.1, 0.01, 0.001}) {
                    std::vector<double> ps(count, p_star);
                    if (spread)
                        for (std::size_t i = 0; i < count; ++i)
                            ps[i] = p_star + (1.0 - p_star) * double(i) / double(count);
                    double mu = 0.0;
                    for (double p : ps) mu += 1.0 / p;
                    const double tail = geometric_sum_tail(ps, analysis::geo_tail_threshold(mu, p_star, rho));
                    ++checked;
                    violations += tail > rho;
                    worst = std::max(worst, tail / rho);
                }
    rep.add("Pr[S > T] <= rho for sums of geometric variables", violations == 0,
            std::to_string(violations) + " violations in " + std::to_string(checked) +
                " exact tail computations; largest tail/rho " + num(worst));

    // The coupon budget is the geometric threshold of the coupon process.
    double max_rel = 0.0, worst_coupon = 0.0;
    std::uint64_t coupon_checked = 0, coupon_bad = 0;
    for (std::uint64_t k = 1; k <= 64; ++k)
        for (std::uint64_t t = 1; t <= k; ++t)
            for (double rho : {0.1, 0.01, 0.001}) {
                const double kd = double(k);
                std::vector<double> ps;
                double mu = 0.0;
                for (std::uint64_t i = 0; i < t; ++i) {
                    ps.push_back(2.0 / 3.0 * double(k - i) / kd);
                    mu += 1.0 / ps.back();
                }
                const double budget = analysis::coupon_budget(t, k, rho);
                const double via_tail = analysis::geo_tail_threshold(mu, ps.back(), rho);
                max_rel = std::max(max_rel, std::abs(budget - via_tail) / budget);
                const double tail = geometric_sum_tail(ps, budget);
                ++coupon_checked;
                coupon_bad += tail > rho;
                worst_coupon = std::max(worst_coupon, tail / rho);
            }
    rep.add("coupon budget equals the geometric threshold", max_rel <= 1e-9,
            "max relative difference " + num(max_rel, 3) + " over " + std::to_string(coupon_checked) + " (k, t, rho)");
    rep.add("Pr[coupon rounds > R] <= rho at success rates 2(k-i)/(3k)", coupon_bad == 0,
            std::to_string(coupon_bad) + " violations in " + std::to_string(coupon_checked) +
                " exact tails (k <= 64); largest tail/rho " + num(worst_coupon));
    return rep.finish(start);
}

// ---------------------------------------------------------------- oracle

std::string ref_mask(std::string bits, std::uint64_t mask) {
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (mask >> i & 1) bits[i] = '0';
    return bits;
}

std::string ref_restrict(const std::string& bits, std::uint64_t lo, std::uint64_t hi) {
    const auto domain = std::bit_ceil(hi - 1 - lo);
    std::string out(domain, '0');
    for (std::uint64_t j = 1; j <= domain; ++j)
        if (lo + j < hi) out[j - 1] = bits[lo + j - 1];
    return out;
}

std::string ref_threshold(const std::vector<std::uint64_t>& raw, ThresholdKey z) {
    std::string out(raw.size(), '0');
    for (std::size_t i = 0; i < raw.size(); ++i)
        if (raw[i] > z.raw || (raw[i] == z.raw && i + 1 >= z.index)) out[i] = '1';
    return out;
}

std::string to_bits(std::uint64_t word, std::uint64_t n) {
    std::string s(n, '0');
    for (std::uint64_t i = 0; i < n; ++i)
        if (word >> i & 1) s[i] = '1';
    return s;
}

VerifyReport suite_oracle(const VerifyOptions& o) {
    const auto start = std::chrono::steady_clock::now();
    Report rep("oracle");
    std::uint64_t probe = 0;

    // Checks one derived oracle: its bit string, one query answer and that
    // query's charge against the expected per-application cost.
    auto check = [&](BitStringOracle& derived, const std::string& expected, QueryCost cost,
                     std::uint64_t& count, std::uint64_t& bad) {
        ++count;
        bool ok = derived.bits() == expected;
        const Index i = 1 + (probe++ % derived.size());
        auto& ledger = derived.ledger();
        const auto q0 = ledger.oracle_queries, g0 = ledger.analytic_gates;
        ok = ok && derived.query(i) == (expected[i - 1] == '1');
        ok = ok && ledger.oracle_queries - q0 == cost.queries && ledger.analytic_gates - g0 == cost.gates;
        bad += !ok;
    };

    Rng rng(derive_seed(o.seed, kOracle, 0));
    std::uint64_t mask_n = 0, mask_bad = 0, restrict_n = 0, restrict_bad = 0, compose_n = 0, compose_bad = 0;
    for (std::uint64_t n = 1; n <= 64; n *= 2) {
        const unsigned logn = static_cast<unsigned>(std::countr_zero(n));
        const bool exhaustive = n <= 16;
        const std::uint64_t strings = exhaustive ? (std::uint64_t{1} << n) : 2000;
        for (std::uint64_t s = 0; s < strings; ++s) {
            const std::uint64_t word =
                exhaustive ? s : (n == 64 ? rng.next_u64() : rng.next_u64() & ((std::uint64_t{1} << n) - 1));
            const auto bits = to_bits(word, n);
            QueryLedger ledger;
            auto x = BitStringOracle::from_bits(bits, ledger);

            // mask_found: every subset of the support for N <= 8, a sample beyond.
            std::vector<std::uint64_t> masks;
            if (n <= 8) {
                for (std::uint64_t sub = word;; sub = (sub - 1) & word) {
                    masks.push_back(sub);
                    if (sub == 0) break;
                }
            } else {
                masks = {0, word};
                for (int r = 0; r < 4; ++r) masks.push_back(word & rng.next_u64());
            }
            for (auto m : masks) {
                SortedIndexList found;
                for (std::uint64_t i = 0; i < n; ++i)
                    if (m >> i & 1) found.insert(i + 1);
                auto z = mask_found(x, found);
                check(z, ref_mask(bits, m), {1, found.size() * logn}, mask_n, mask_bad);
            }

            // restrict_interval: every interval (lo, hi) with 0 <= lo, hi <= N+1, hi - lo >= 2.
            for (std::uint64_t lo = 0; lo + 2 <= n + 1; ++lo)
                for (std::uint64_t hi = lo + 2; hi <= n + 1; ++hi) {
                    auto y = restrict_interval(x, lo, hi);
                    check(y, ref_restrict(bits, lo, hi), {1, logn}, restrict_n, restrict_bad);
                }

            // One composition per string: restrict, then mask everything found there.
            if (n >= 2) {
                const std::uint64_t lo = rng.below(n), hi = std::min(n + 1, lo + 2 + rng.below(n));
                auto y = restrict_interval(x, lo, hi);
                const auto ybits = ref_restrict(bits, lo, hi);
                SortedIndexList all;
                std::uint64_t ymask = 0;
                for (std::size_t j = 0; j < ybits.size(); ++j)
                    if (ybits[j] == '1') {
                        all.insert(j + 1);
                        ymask |= std::uint64_t{1} << j;
                    }
                auto w = mask_found(y, all);
                const auto ylog = static_cast<std::uint64_t>(std::countr_zero(ybits.size()));
                check(w, ref_mask(ybits, ymask), {1, logn + all.size() * ylog}, compose_n, compose_bad);
            }
        }
    }
    rep.add("mask_found bit strings and costs", mask_bad == 0,
            std::to_string(mask_bad) + " mismatches in " + std::to_string(mask_n) +
                " cases (all strings and found sets for N <= 8, all strings N = 16, 2000 strings N = 32, 64)");
    rep.add("restrict_interval bit strings and costs", restrict_bad == 0,
            std::to_string(restrict_bad) + " mismatches in " + std::to_string(restrict_n) +
                " cases (all intervals; all strings for N <= 16, 2000 strings N = 32, 64)");
    rep.add("restrict then mask composes costs additively", compose_bad == 0,
            std::to_string(compose_bad) + " mismatches in " + std::to_string(compose_n) + " cases");

    std::uint64_t thr_n = 0, thr_bad = 0;
    for (std::uint64_t n = 1; n <= 64; n *= 2) {
        const unsigned bits = n <= 8 ? 2 : 3;
        const std::uint64_t values = std::uint64_t{1} << bits;
        const bool exhaustive = n <= 8;
        const std::uint64_t vectors = exhaustive ? static_cast<std::uint64_t>(std::pow(double(values), double(n))) : 500;
        for (std::uint64_t s = 0; s < vectors; ++s) {
            std::vector<std::uint64_t> raw(n);
            std::uint64_t code = s;
            for (auto& r : raw) {
                if (exhaustive) {
                    r = code % values;
                    code /= values;
                } else {
                    r = rng.below(values);
                }
            }
            QueryLedger ledger;
            FixedVector v(raw, bits, ledger);
            for (std::uint64_t zr = 0; zr <= values; ++zr)
                for (std::uint64_t zi = 0; zi <= n + 1; ++zi) {
                    const ThresholdKey z{zr, zi};
                    auto t = threshold_oracle(v, z);
                    check(t, ref_threshold(raw, z), {2, bits}, thr_n, thr_bad);
                }
        }
    }
    rep.add("threshold_oracle bit strings and costs", thr_bad == 0,
            std::to_string(thr_bad) + " mismatches in " + std::to_string(thr_n) +
                " cases (all vectors and keys for N <= 8, 500 vectors N = 16..64)");
    return rep.finish(start);
}

} // namespace

bool VerifyReport::pass() const { return failures() == 0; }

std::size_t VerifyReport::failures() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.pass; }));
}

const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> names{"grover_exact", "ampest",    "counting", "coupon",  "run_length",
                                                "multifind",    "summing",   "harmonic", "tails",   "oracle"};
    return names;
}

VerifyReport verify_bounds(const std::string& suite, const VerifyOptions& options) {
    if (suite == "grover_exact") return suite_grover_exact(options);
    if (suite == "ampest") return suite_ampest(options);
    if (suite == "counting") return suite_counting(options);
    if (suite == "coupon") return suite_coupon(options);
    if (suite == "run_length") return suite_run_length(options);
    if (suite == "multifind") return suite_multifind(options);
    if (suite == "summing") return suite_summing(options);
    if (suite == "harmonic") return suite_harmonic(options);
    if (suite == "tails") return suite_tails(options);
    if (suite == "oracle") return suite_oracle(options);
    throw std::invalid_argument("unknown verification suite '" + suite + "'");
}

void print_report(std::ostream& out, const VerifyReport& report) {
    for (const auto& c : report.checks)
        out << (c.pass ? "  ok    " : "  FAIL  ") << report.suite << ": " << c.name << " -- " << c.detail << '\n';
    out << report.suite << ": " << (report.checks.size() - report.failures()) << "/" << report.checks.size()
        << " checks passed in " << num(report.seconds, 3) << " s\n";
}

} // namespace qfind::harness
