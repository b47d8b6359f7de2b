#pragma once

#include <vector>

#include "lagfib/expansion.hpp"
#include "lagfib/hpcomplex.hpp"
#include "lagfib/mahler_series.hpp"
#include "lagfib/precision.hpp"

namespace lagfib {

// Fourier coefficient of the period-1 fluctuation:
//   alpha_j(k) = Gamma(2 pi i j / ln k) zeta(1 + 2 pi i j / ln k) / ln k
//   alpha_0(k) = (-gamma_1 - gamma^2/2 + pi^2/12 + ln^2 k / 12) / ln k.
// The 1/ln k factor belongs to every j: it is the residue of the common
// 1/(1 - k^-s) pole factor, and the j = 0 value is pinned empirically by
// the measured center of the phi oscillation.  (The usual tabulation of
// the j != 0 magnitudes omits the 1/ln k; see alpha_product_magnitude.)
HPComplex fourier_alpha(unsigned k, long j, const PrecisionContext& ctx);

// |Gamma(2 pi i j/ln k) zeta(1 + 2 pi i j/ln k)| = ln k * |alpha_j(k)|,
// the quantity conventionally tabulated for these coefficients; j != 0.
HPReal alpha_product_magnitude(unsigned k, long j, const PrecisionContext& ctx);

// Truncated table alpha_0..alpha_J with alpha_{-j} = conj(alpha_j) and a
// bound on the dropped tail sum_{|j|>J} |alpha_j|.
struct FourierCoeffTable {
    unsigned k = 2;
    int J = 0;
    std::vector<HPComplex> coeffs;  // index j = 0..J
    HPReal tail_bound{HPReal::kMinDigits};

    HPComplex coeff(long j) const;  // any |j| <= J
};

// Smallest J whose estimated tail drops below ctx.fourier_cutoff_tail; the
// cutoff is driven by the computed coefficient magnitudes themselves (the
// envelope constants of the decay bounds are unspecified).
FourierCoeffTable build_fourier_table(unsigned k, const PrecisionContext& ctx);

// psi_k(x) = sum_{|j|<=J} alpha_j e^(2 pi i j x): real up to rounding;
// the imaginary residue is checked before the real part is returned.
HPReal psi(const FourierCoeffTable& table, const HPReal& x,
           const PrecisionContext& ctx);

// Smooth part of ln a_k(n) plus the periodic fluctuation at
// x = log_k(n / log_k n); error_scale = (ln ln n)^2 / ln n.
ExpansionResult ln_a_asymptotic(unsigned k, const LargeArgument& n,
                                const FourierCoeffTable& table,
                                const PrecisionContext& ctx);

// lim c_k(n) = k ln k.
HPReal c_limit(unsigned k, const PrecisionContext& ctx);

// delta psi_k(n) = psi_k(x - log_k(1 + 1/log_k n)) - psi_k(x).
HPReal delta_psi(unsigned k, const LargeArgument& n,
                 const FourierCoeffTable& table, const PrecisionContext& ctx);

// ln c_k(n) = ln(k ln k) + delta psi_k(n) (+ O((ln ln n)^2/ln n)).
ExpansionResult ln_c_asymptotic(unsigned k, const LargeArgument& n,
                                const FourierCoeffTable& table,
                                const PrecisionContext& ctx);

// Constant around which phi_k oscillates.  Three evaluations are returned:
// the two sign variants of the printed closed form
//   (1 + ln ln k/ln k) ln k - ln(2 pi)/2 +- (ln k + 2 ln ln k)^2/(8 ln k)
//     + alpha_0(k)
// and the form consistent with the difference of the two asymptotic
// expansions,
//   (1 + ln ln k/(2 ln k)) ln ln k - ln(2 pi)/2
//     - (ln k + 2 ln ln k)^2/(8 ln k) + alpha_0(k),
// which is the one matching the measured center (-0.079793025... at k = 2)
// and is marked canonical.
enum class CenterVariant { printed_plus, printed_minus, derived };

struct PhiCenterConstants {
    HPReal printed_plus;
    HPReal printed_minus;
    HPReal derived;
    CenterVariant canonical = CenterVariant::derived;

    const HPReal& canonical_value() const { return derived; }
};

PhiCenterConstants phi_center_constant(unsigned k, const PrecisionContext& ctx);

}  // namespace lagfib
