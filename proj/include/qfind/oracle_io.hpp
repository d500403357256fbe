#pragma once

// Plain-text instance files: one entry per line, blank lines and lines
// starting with '#' ignored.
//   bit strings: a single 0 or 1 per line
//   vectors:     a decimal in [0, 1] (rounded to nearest) or a binary
//                fraction written as 0b followed by up to b digits

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

namespace qfind {

std::string read_bits(std::istream& in);
std::string read_bits_file(const std::string& path);

std::vector<std::uint64_t> read_vector(std::istream& in, unsigned bits);
std::vector<std::uint64_t> read_vector_file(const std::string& path, unsigned bits);

} // namespace qfind
