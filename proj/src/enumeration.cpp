#include "opspec/enumeration.hpp"

#include <cmath>
#include <stdexcept>

namespace opspec {

namespace {

// Smallest q >= 1 with q*(q+3)/2 >= k.
std::uint64_t fraction_block(std::uint64_t k) {
    auto q = static_cast<std::uint64_t>((std::sqrt(9.0 + 8.0 * static_cast<double>(k)) - 3.0) / 2.0);
    if (q < 1) q = 1;
    while (q * (q + 3) / 2 < k) ++q;
    while (q > 1 && (q - 1) * (q + 2) / 2 >= k) --q;
    return q;
}

}  // namespace

Rational unit_fraction(std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("unit_fraction: index is 1-based");
    const std::uint64_t q = fraction_block(k);
    const std::uint64_t before = (q - 1) * (q + 2) / 2;  // terms in blocks 1..q-1
    const std::uint64_t p = k - 1 - before;
    return Rational(BigInt(p), BigInt(q));
}

RationalComplex unit_circle_point(const Rational& u) {
    if (u < 0 || u > 1) throw std::invalid_argument("unit_circle_point: u outside [0,1]");
    if (u == 0 || u == 1) return {Rational(1), Rational(0)};
    if (u == Rational(1, 4)) return {Rational(0), Rational(1)};
    if (u == Rational(1, 2)) return {Rational(-1), Rational(0)};
    if (u == Rational(3, 4)) return {Rational(0), Rational(-1)};

    const double t_dbl = std::tan(M_PI * to_double(u));
    if (!std::isfinite(t_dbl)) return {Rational(-1), Rational(0)};

    const Rational t = rational_from_double(t_dbl);
    const Rational t2 = t * t;
    const Rational denom = 1 + t2;
    return {(1 - t2) / denom, (2 * t) / denom};
}

}  // namespace opspec
