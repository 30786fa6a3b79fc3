#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <string>

namespace opspec {

// Arbitrary-precision rationals back every multiplier value. Doubles convert
// in exactly (they are dyadic rationals), so equality queries against
// enumerated multipliers are decidable with no epsilon.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact value of a finite double. Throws std::invalid_argument on NaN/inf.
Rational rational_from_double(double x);

double to_double(const Rational& q);

// Parses "num/den" or a plain integer "num". Throws std::invalid_argument.
Rational parse_rational(const std::string& text);

struct RationalComplex {
    Rational re;
    Rational im;

    RationalComplex() = default;
    RationalComplex(Rational re, Rational im) : re(std::move(re)), im(std::move(im)) {}

    friend bool operator==(const RationalComplex& a, const RationalComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const RationalComplex& a, const RationalComplex& b) {
        return !(a == b);
    }

    friend RationalComplex operator+(const RationalComplex& a, const RationalComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend RationalComplex operator-(const RationalComplex& a, const RationalComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend RationalComplex operator*(const Rational& s, const RationalComplex& z) {
        return {s * z.re, s * z.im};
    }
};

inline std::complex<double> to_complex(const RationalComplex& z) {
    return {to_double(z.re), to_double(z.im)};
}

inline RationalComplex rational_complex_from(std::complex<double> z) {
    return {rational_from_double(z.real()), rational_from_double(z.imag())};
}

}  // namespace opspec
