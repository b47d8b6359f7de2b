#include "lagfib/constants.hpp"

namespace lagfib {

namespace {
// 60 significant digits, published reference values.
constexpr const char* kEulerGamma =
    "0.577215664901532860606512090082402431042159335939923598805767";
constexpr const char* kStieltjes1 =
    "-0.0728158454836767248605863758749013191377363383343379525990066";
}  // namespace

MathConstants MathConstants::at(int digits) {
    MathConstants c{
        HPReal::from_string(kEulerGamma, digits),
        HPReal::from_string(kStieltjes1, digits),
        const_pi(digits),
        HPReal(digits),
    };
    HPReal two_pi = c.pi * 2L;
    c.ln_2pi = ln(two_pi);
    return c;
}

}  // namespace lagfib
