#pragma once

#include <cstdint>

#include "opspec/rational.hpp"

namespace opspec {

// Index machinery shared by the multiplier enumerations. Everything here is a
// pure function of the index; no state, no duplicates removed.

// Denominator-major enumeration of Q ∩ [0,1], 1-based:
//   0/1, 1/1, 0/2, 1/2, 2/2, 0/3, 1/3, 2/3, 3/3, 0/4, ...
// Block q contributes q+1 fractions, so the first ~q²/2 terms resolve [0,1]
// to spacing 1/q, giving prefix covering radius ~ 0.36/sqrt(N).
Rational unit_fraction(std::uint64_t k);

// Exact rational point on the unit circle at angle approximately 2*pi*u for
// u in [0,1]. Uses the slope parametrization (1-t^2, 2t)/(1+t^2) with the
// dyadic slope t = tan(pi*u) rounded by the double evaluation, so x^2+y^2 = 1
// holds exactly while the angle is only double-accurate. u = 1/2 maps to the
// parametrization's pole (-1, 0) exactly.
RationalComplex unit_circle_point(const Rational& u);

}  // namespace opspec
