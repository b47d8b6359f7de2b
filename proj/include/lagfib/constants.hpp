#pragma once

#include "lagfib/hpreal.hpp"

namespace lagfib {

// High-precision mathematical constants used by the Fourier-coefficient
// formulas.  Euler's constant and the first Stieltjes constant are embedded
// as 60-digit decimal literals from standard references rather than computed
// at runtime; pi and ln(2*pi) come from MPFR.
struct MathConstants {
    HPReal euler_gamma;
    HPReal stieltjes_1;
    HPReal pi;
    HPReal ln_2pi;

    static MathConstants at(int digits);
};

}  // namespace lagfib
