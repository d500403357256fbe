#include "qfind/harness/csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace qfind::harness {

namespace {

template <class T>
std::string number(T x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

template <class T>
std::string optional_field(const std::optional<T>& x) {
    if (!x) return {};
    if constexpr (std::is_floating_point_v<T>) return format_double(*x);
    else return number(*x);
}

// Splits one record, honouring quotes; embedded newlines are pulled from `in`.
std::vector<std::string> split_record(std::string line, std::istream& in) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0;; ++i) {
        if (i == line.size()) {
            if (!quoted) break;
            std::string more;
            if (!std::getline(in, more)) throw std::runtime_error("csv: unterminated quoted field");
            fields.back() += '\n';
            line = std::move(more);
            i = static_cast<std::size_t>(-1);
            continue;
        }
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    fields.back() += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                fields.back() += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.emplace_back();
        } else if (ch != '\r') {
            fields.back() += ch;
        }
    }
    return fields;
}

template <class T>
T parse_number(const std::string& s, const char* column) {
    T value{};
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || end != s.data() + s.size())
        throw std::runtime_error(std::string("csv: bad value in column ") + column + ": '" + s + "'");
    return value;
}

double parse_double(const std::string& s, const char* column) {
    if (s == "nan") return std::nan("");
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    return parse_number<double>(s, column);
}

template <class T>
std::optional<T> parse_optional(const std::string& s, const char* column) {
    if (s.empty()) return std::nullopt;
    if constexpr (std::is_floating_point_v<T>) return parse_double(s, column);
    else return parse_number<T>(s, column);
}

} // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return number(x);
}

std::string csv_quote(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string to_csv_row(const TrialRecord& r) {
    std::string row = csv_quote(r.algorithm);
    for (const auto& field : {number(r.n), optional_field(r.k), optional_field(r.rho), optional_field(r.delta),
                              optional_field(r.lambda), optional_field(r.p), number(r.trial), number(r.seed),
                              number(r.queries), number(r.analytic_gates), std::string(r.success ? "1" : "0"),
                              optional_field(r.value), optional_field(r.error)}) {
        row += ',';
        row += field;
    }
    return row;
}

CsvWriter::CsvWriter(std::ostream& out) : out_(&out) { *out_ << kCsvHeader << '\n'; }

void CsvWriter::write(const TrialRecord& r) { *out_ << to_csv_row(r) << '\n'; }

void write_csv(std::ostream& out, std::span<const TrialRecord> records) {
    CsvWriter w(out);
    for (const auto& r : records) w.write(r);
}

std::vector<TrialRecord> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv: missing header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader) throw std::runtime_error("csv: unexpected header");
    std::vector<TrialRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_record(line, in);
        if (f.size() != 14) throw std::runtime_error("csv: expected 14 fields, got " + std::to_string(f.size()));
        TrialRecord r;
        r.algorithm = f[0];
        r.n = parse_number<std::uint64_t>(f[1], "N");
        r.k = parse_optional<std::uint64_t>(f[2], "k");
        r.rho = parse_optional<double>(f[3], "rho");
        r.delta = parse_optional<double>(f[4], "delta");
        r.lambda = parse_optional<double>(f[5], "lambda");
        r.p = parse_optional<double>(f[6], "p");
        r.trial = parse_number<std::uint64_t>(f[7], "trial");
        r.seed = parse_number<std::uint64_t>(f[8], "seed");
        r.queries = parse_number<std::uint64_t>(f[9], "queries");
        r.analytic_gates = parse_number<std::uint64_t>(f[10], "analytic_gates");
        if (f[11] != "0" && f[11] != "1") throw std::runtime_error("csv: success must be 0 or 1");
        r.success = f[11] == "1";
        r.value = parse_optional<double>(f[12], "value");
        r.error = parse_optional<double>(f[13], "error");
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace qfind::harness
