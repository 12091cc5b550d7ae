#pragma once

// Text family files.
//
//   n=<int>
//   {}
//   1
//   1,2
//   0x6
//
// One set per line after the header: ascending comma-separated elements,
// `{}` for the empty set, or a `0x` hex mask. Blank lines and lines starting
// with `#` are skipped. The canonical form written back lists sets sorted by
// mask value in element notation.

#include "kwise/setcore.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace kwise {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string format_set(Mask m);
std::string format_hex(Mask m);

/// Parses one set line; throws FormatError.
Mask parse_set(const std::string& text, const Universe& u);

Family read_family(std::istream& in);
void write_family(std::ostream& out, const Family& f);

Family read_family_file(const std::string& path);
void write_family_file(const std::string& path, const Family& f);

} // namespace kwise
