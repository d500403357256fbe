#pragma once

// CSV form of TrialRecord: fixed header, RFC 4180 quoting, doubles in
// shortest round-trip form so that parsing a file gives back the records.

#include "qfind/harness/trial.hpp"

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qfind::harness {

inline constexpr std::string_view kCsvHeader =
    "algorithm,N,k,rho,delta,lambda,p,trial,seed,queries,analytic_gates,success,value,error";

std::string format_double(double x);
std::string csv_quote(std::string_view field);
std::string to_csv_row(const TrialRecord& r);

/// Writes the header on construction and one line per record.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out);
    void write(const TrialRecord& r);

private:
    std::ostream* out_;
};

void write_csv(std::ostream& out, std::span<const TrialRecord> records);

/// Parses a file produced by write_csv; throws std::runtime_error on malformed input.
std::vector<TrialRecord> read_csv(std::istream& in);

} // namespace qfind::harness
