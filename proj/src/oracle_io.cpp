#include "qfind/oracle_io.hpp"

#include "qfind/oracle.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string_view>

namespace qfind {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::runtime_error line_error(std::size_t line, const std::string& what) {
    return std::runtime_error("line " + std::to_string(line) + ": " + what);
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return in;
}

} // namespace

std::string read_bits(std::istream& in) {
    std::string bits, line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto s = trim(line);
        if (s.empty() || s.front() == '#') continue;
        if (s != "0" && s != "1") throw line_error(lineno, "expected 0 or 1");
        bits.push_back(s.front());
    }
    return bits;
}

std::string read_bits_file(const std::string& path) {
    auto in = open_input(path);
    return read_bits(in);
}

std::vector<std::uint64_t> read_vector(std::istream& in, unsigned bits) {
    std::vector<std::uint64_t> raw;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto s = trim(line);
        if (s.empty() || s.front() == '#') continue;
        if (s.starts_with("0b")) {
            const auto digits = s.substr(2);
            if (digits.empty() || digits.size() > bits)
                throw line_error(lineno, "binary fraction needs 1 to " + std::to_string(bits) + " digits");
            std::uint64_t r = 0;
            for (std::size_t j = 0; j < digits.size(); ++j) {
                if (digits[j] != '0' && digits[j] != '1') throw line_error(lineno, "bad binary digit");
                if (digits[j] == '1') r |= std::uint64_t{1} << (bits - 1 - j);
            }
            raw.push_back(r);
            continue;
        }
        double value = 0.0;
        const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc{} || end != s.data() + s.size()) throw line_error(lineno, "bad number");
        if (!(value >= 0.0 && value <= 1.0)) throw line_error(lineno, "value outside [0, 1]");
        raw.push_back(FixedVector::to_raw(value, bits));
    }
    return raw;
}

std::vector<std::uint64_t> read_vector_file(const std::string& path, unsigned bits) {
    auto in = open_input(path);
    return read_vector(in, bits);
}

} // namespace qfind
