#include "lagfib/debruijn.hpp"

#include <cmath>

#include "lagfib/constants.hpp"
#include "lagfib/errors.hpp"
#include "lagfib/special_functions.hpp"

namespace lagfib {

namespace {

constexpr int kGuard = 15;

void check_k(unsigned k) {
    if (k < 2) throw DomainError("k must be >= 2");
}

HPReal round_to(const HPReal& v, int digits) {
    HPReal out(digits);
    mpfr_set(out.raw(), v.raw(), MPFR_RNDN);
    return out;
}

// ln n and ln ln n at working precision; n must exceed 1.
struct LogPair {
    HPReal L, LL;
};
LogPair logs_of(const LargeArgument& n, int d) {
    HPReal L(d);
    mpfr_set(L.raw(), n.ln_value().raw(), MPFR_RNDN);
    if (!(L > 0.0)) throw DomainError("argument must exceed 1");
    return {L, ln(L)};
}

}  // namespace

HPComplex fourier_alpha(unsigned k, long j, const PrecisionContext& ctx) {
    check_k(k);
    const int d = ctx.digits + kGuard;
    PrecisionContext work = ctx.with_digits(d);
    HPReal lnk = const_ln(k, d);

    if (j == 0) {
        MathConstants mc = MathConstants::at(d);
        HPReal v = -mc.stieltjes_1 - mc.euler_gamma * mc.euler_gamma / 2L +
                   mc.pi * mc.pi / 12L + lnk * lnk / 12L;
        return {round_to(v / lnk, ctx.digits), HPReal(ctx.digits)};
    }

    HPReal t = const_pi(d) * (2 * j) / lnk;
    HPComplex g = gamma_complex(HPComplex{HPReal(d), t}, work);
    HPComplex z = zeta_one_plus_it(t, work);
    HPComplex a = g * z / lnk;
    HPReal rr(ctx.digits), ri(ctx.digits);
    mpfr_set(rr.raw(), a.re().raw(), MPFR_RNDN);
    mpfr_set(ri.raw(), a.im().raw(), MPFR_RNDN);
    return {std::move(rr), std::move(ri)};
}

HPReal alpha_product_magnitude(unsigned k, long j, const PrecisionContext& ctx) {
    if (j == 0) throw DomainError("alpha_product_magnitude: j must be nonzero");
    const int d = ctx.digits + kGuard;
    HPComplex a = fourier_alpha(k, j, ctx.with_digits(d));
    return round_to(abs(a) * const_ln(k, d), ctx.digits);
}

HPComplex FourierCoeffTable::coeff(long j) const {
    const long a = j < 0 ? -j : j;
    if (a > J) throw DomainError("FourierCoeffTable: |j| beyond cutoff");
    return j < 0 ? conj(coeffs[a]) : coeffs[a];
}

FourierCoeffTable build_fourier_table(unsigned k, const PrecisionContext& ctx) {
    check_k(k);
    const int d = ctx.digits + kGuard;
    PrecisionContext work = ctx.with_digits(d);

    // Successive-magnitude ratio bound: |alpha_{j+1}|/|alpha_j| stays below
    // twice the Gamma-envelope decay factor exp(-pi^2/ln k).
    const double lnk = std::log(static_cast<double>(k));
    const double rho = std::min(0.5, 2.0 * std::exp(-M_PI * M_PI / lnk));

    FourierCoeffTable t;
    t.k = k;
    t.coeffs.push_back(fourier_alpha(k, 0, work));
    HPComplex next = fourier_alpha(k, 1, work);
    for (int J = 1; J <= 64; ++J) {
        t.coeffs.push_back(next);
        next = fourier_alpha(k, J + 1, work);
        // tail over both signs of j: 2 |alpha_{J+1}| (1 + rho + rho^2 + ...)
        HPReal tail = abs(next) * 2L / HPReal(1.0 - rho, d);
        if (tail < ctx.fourier_cutoff_tail) {
            t.J = J;
            t.tail_bound = round_to(tail, ctx.digits);
            return t;
        }
    }
    throw InternalError("build_fourier_table: tail does not reach the cutoff");
}

HPReal psi(const FourierCoeffTable& table, const HPReal& x,
           const PrecisionContext& ctx) {
    const int d = ctx.digits + kGuard;
    // Period 1: reduce to the fractional part before scaling by 2 pi j.
    HPReal xr(d);
    mpfr_set(xr.raw(), x.raw(), MPFR_RNDN);
    xr = frac(xr);
    HPReal two_pi = const_pi(d) * 2L;

    HPComplex acc{table.coeffs[0].re(), table.coeffs[0].im()};
    for (long j = 1; j <= table.J; ++j) {
        HPComplex e = unit_phase(two_pi * j * xr);
        // alpha_j e^(2 pi i j x) + conj(alpha_j) e^(-2 pi i j x)
        acc += table.coeffs[j] * e + conj(table.coeffs[j] * e);
    }
    // Reality check before discarding the imaginary residue.
    const double max_im = std::pow(10.0, -(ctx.digits - 5));
    if (!(abs(acc.im()) < max_im))
        throw InternalError("psi: imaginary residue above rounding level");
    return round_to(acc.re(), ctx.digits);
}

ExpansionResult ln_a_asymptotic(unsigned k, const LargeArgument& n,
                                const FourierCoeffTable& table,
                                const PrecisionContext& ctx) {
    check_k(k);
    if (n.exact() && *n.exact() < k)
        throw DomainError("ln_a_asymptotic: requires n >= k");
    const int d = ctx.digits + kGuard;
    HPReal lnk = const_ln(k, d);
    HPReal llk = ln(lnk);
    auto [L, LL] = logs_of(n, d);
    if (!(L >= lnk)) throw DomainError("ln_a_asymptotic: requires n >= k");

    HPReal half(0.5, d);
    HPReal x = (L - LL + llk) / lnk;  // log_k(n / log_k n)
    MathConstants mc = MathConstants::at(d);

    HPReal v = (L - LL) * (L - LL) / (lnk * 2L);
    v += (half + 1L / lnk + llk / lnk) * L;
    v -= (1L + llk / lnk) * LL;
    v += (1L + llk / (lnk * 2L)) * llk;
    v -= mc.ln_2pi * half;
    v += psi(table, x, ctx.with_digits(d));

    ExpansionResult r{round_to(v, ctx.digits), 0, round_to(LL * LL / L, ctx.digits)};
    return r;
}

HPReal c_limit(unsigned k, const PrecisionContext& ctx) {
    check_k(k);
    const int d = ctx.digits + kGuard;
    return round_to(const_ln(k, d) * static_cast<long>(k), ctx.digits);
}

HPReal delta_psi(unsigned k, const LargeArgument& n,
                 const FourierCoeffTable& table, const PrecisionContext& ctx) {
    check_k(k);
    if (n.exact() && *n.exact() < static_cast<unsigned long>(k) * k)
        throw DomainError("delta_psi: requires n >= k^2");
    const int d = ctx.digits + kGuard;
    HPReal lnk = const_ln(k, d);
    HPReal llk = ln(lnk);
    auto [L, LL] = logs_of(n, d);
    if (!(L >= lnk * 2L)) throw DomainError("delta_psi: requires n >= k^2");

    HPReal x = (L - LL + llk) / lnk;
    // log_k(1 + 1/log_k n) = ln(1 + ln k/ln n)/ln k
    HPReal shift = ln(1L + lnk / L) / lnk;
    PrecisionContext work = ctx.with_digits(d);
    HPReal v = psi(table, x - shift, work) - psi(table, x, work);
    return round_to(v, ctx.digits);
}

ExpansionResult ln_c_asymptotic(unsigned k, const LargeArgument& n,
                                const FourierCoeffTable& table,
                                const PrecisionContext& ctx) {
    const int d = ctx.digits + kGuard;
    auto [L, LL] = logs_of(n, d);
    HPReal v = ln(c_limit(k, ctx.with_digits(d))) +
               delta_psi(k, n, table, ctx.with_digits(d));
    return {round_to(v, ctx.digits), 0, round_to(LL * LL / L, ctx.digits)};
}

PhiCenterConstants phi_center_constant(unsigned k, const PrecisionContext& ctx) {
    check_k(k);
    const int d = ctx.digits + kGuard;
    HPReal lnk = const_ln(k, d);
    HPReal llk = ln(lnk);
    MathConstants mc = MathConstants::at(d);
    HPReal half_ln2pi = mc.ln_2pi * HPReal(0.5, d);
    HPReal quad = (lnk + llk * 2L) * (lnk + llk * 2L) / (lnk * 8L);
    HPReal alpha0 = fourier_alpha(k, 0, ctx.with_digits(d)).re();

    HPReal printed_base = (1L + llk / lnk) * lnk - half_ln2pi + alpha0;
    HPReal derived =
        (1L + llk / (lnk * 2L)) * llk - half_ln2pi - quad + alpha0;

    PhiCenterConstants c{
        round_to(printed_base + quad, ctx.digits),
        round_to(printed_base - quad, ctx.digits),
        round_to(derived, ctx.digits),
        CenterVariant::derived,
    };
    return c;
}

}  // namespace lagfib
