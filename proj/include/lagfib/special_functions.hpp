#pragma once

#include "lagfib/hpcomplex.hpp"
#include "lagfib/precision.hpp"

namespace lagfib {

// Gamma(z) for complex z away from the nonpositive integers.
//
// Evaluation uses the Stirling asymptotic series after shifting the argument
// up by the functional equation until Re(z)+shift is large enough for the
// requested precision; the Bernoulli coefficients are exact rationals.
// Relative error is below 10^-(ctx.digits - 5) for |Im z| <= 1e4.
// Throws PoleError when z is within 10^-(ctx.digits/2) of a pole.
HPComplex gamma_complex(const HPComplex& z, const PrecisionContext& ctx);

// zeta(1 + i t), t != 0, via Euler-Maclaurin summation.  The Euler-Maclaurin
// route is used (rather than alternating-series acceleration) because the
// eta-function denominator 1 - 2^(1-s) vanishes exactly at t = 2*pi*j/ln 2,
// which are the very ordinates this toolkit evaluates.
// Absolute error below 10^-(ctx.digits - 5) for |t| <= 1e4.
HPComplex zeta_one_plus_it(const HPReal& t, const PrecisionContext& ctx);

// zeta(s) for real s > 1 through the same Euler-Maclaurin engine; exists as
// an internal consistency probe (zeta(2) = pi^2/6).
HPReal zeta_real(const HPReal& s, const PrecisionContext& ctx);

}  // namespace lagfib
