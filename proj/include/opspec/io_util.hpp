#pragma once

#include <complex>
#include <string>

namespace opspec {

// Shortest round-trip decimal for a double ("%.17g" trimmed); infinities as
// "inf"/"-inf" so CSV stays parseable.
std::string format_double(double v);

// Writes via a temporary file in the same directory, then renames over the
// target, so readers never observe a partial file.
void write_file_atomic(const std::string& path, const std::string& contents);

std::string read_file(const std::string& path);

// "re,im" -> complex; throws std::invalid_argument.
std::complex<double> parse_complex_pair(const std::string& text);

}  // namespace opspec
