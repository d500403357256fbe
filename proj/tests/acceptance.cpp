// Acceptance suite: runs the nine criteria at full scale and prints one
// PASS/FAIL line per criterion after the individual check lines. A
// criterion passes when every one of its checks passes within its runtime
// limit.

#include "qfind/harness/verify.hpp"

#include <iomanip>
#include <sstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

struct Criterion {
    std::string id;
    std::string title;
    std::vector<std::string> suites;
    double limit_seconds;
};

} // namespace

int main() {
    using namespace qfind::harness;
    const std::vector<Criterion> criteria{
        {"C1", "exact Grover certainty", {"grover_exact"}, 60},
        {"C2", "amplitude estimation error bound", {"ampest"}, 120},
        {"C3", "approximate counting within a factor 3/2", {"counting"}, 300},
        {"C4", "coupon-collector round budget and uniform subsets", {"coupon"}, 300},
        {"C5", "run-length bound", {"run_length"}, 60},
        {"C6", "finding all marked elements", {"multifind"}, 1800},
        {"C7", "approximate summing", {"summing"}, 1800},
        {"C8", "harmonic-number and geometric-tail bounds", {"harmonic", "tails"}, 60},
        {"C9", "oracle semantics", {"oracle"}, 60},
    };

    const VerifyOptions options;
    std::vector<std::string> verdicts;
    bool all = true;
    for (const auto& c : criteria) {
        bool pass = true;
        double seconds = 0.0;
        std::size_t checks = 0, failed = 0;
        for (const auto& s : c.suites) {
            const auto report = verify_bounds(s, options);
            print_report(std::cout, report);
            std::cout.flush();
            pass = pass && report.pass();
            seconds += report.seconds;
            checks += report.checks.size();
            failed += report.failures();
        }
        const bool in_time = seconds <= c.limit_seconds;
        pass = pass && in_time;
        all = all && pass;
        std::ostringstream line;
        line << c.id << ' ' << (pass ? "PASS" : "FAIL") << "  " << c.title << " -- " << (checks - failed) << "/"
             << checks << " checks, " << std::fixed << std::setprecision(1) << seconds << " s (limit "
             << c.limit_seconds << " s" << (in_time ? "" : ", exceeded") << ")";
        verdicts.push_back(line.str());
        std::cout << line.str() << "\n\n";
    }
    std::cout << "Acceptance summary\n";
    for (const auto& v : verdicts) std::cout << v << '\n';
    return all ? 0 : 1;
}
