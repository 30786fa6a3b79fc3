#include "opspec/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace opspec {

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument("rational_from_double: value is not finite");
    }
    if (x == 0.0) return Rational(0);

    int exp = 0;
    double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [1/2, 1)
    // 53 mantissa bits make mant * 2^53 an integer.
    auto scaled = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;

    Rational q(scaled);
    if (exp >= 0) {
        q *= Rational(BigInt(1) << exp);
    } else {
        q /= Rational(BigInt(1) << -exp);
    }
    return q;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(BigInt(text));
        }
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse rational '" + text + "'");
    }
}

}  // namespace opspec
