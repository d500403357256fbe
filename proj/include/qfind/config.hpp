#pragma once

// Tunable constants shared by the algorithm modules. Defaults are the values
// used throughout the test and acceptance suites.

#include "qfind/qsim.hpp"

namespace qfind {

struct Config {
    Backend backend = Backend::rotation;

    // Iteration-budget growth ratio of the expected-time search loop.
    double bbht_growth = 1.2;
    // Truncation constant C of the bounded search: at most C*sqrt(N/k_lb) queries.
    double truncation_c = 9.0;
    // Safety cap of the unbounded search, in units of sqrt(N) queries.
    double hard_cap_factor = 1000.0;
    // Total query budget of maximum finding, in units of sqrt(N).
    double maxfind_budget = 22.5;

    // Median boosting uses 2*ceil(median_factor * ln(1/rho)) + 1 repetitions.
    double median_factor = 4.5;
    // Approximate counting refines with a grid count_refine/eps times finer
    // than the first grid that detected a marked element.
    double count_refine = 8.0;

    // Quantile slack: the estimate lies between the p- and (c*p)-quantiles.
    double quantile_c = 0.5;
    // Constant alpha of the summing parameter rules.
    double params_alpha = 1.0;
};

} // namespace qfind
