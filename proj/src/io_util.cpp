#include "opspec/io_util.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace opspec {

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char best[40];
    // Shortest precision that round-trips.
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(best, sizeof(best), "%.*g", precision, v);
        if (std::strtod(best, nullptr) == v) break;
    }
    return best;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
        out << contents;
        if (!out.flush()) throw std::runtime_error("write to '" + tmp + "' failed");
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::complex<double> parse_complex_pair(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw std::invalid_argument("expected 're,im', got '" + text + "'");
    }
    std::size_t used_re = 0;
    std::size_t used_im = 0;
    const std::string re_str = text.substr(0, comma);
    const std::string im_str = text.substr(comma + 1);
    double re, im;
    try {
        re = std::stod(re_str, &used_re);
        im = std::stod(im_str, &used_im);
    } catch (const std::exception&) {
        throw std::invalid_argument("expected 're,im', got '" + text + "'");
    }
    if (used_re != re_str.size() || used_im != im_str.size()) {
        throw std::invalid_argument("trailing characters in complex value '" + text + "'");
    }
    return {re, im};
}

}  // namespace opspec
