#include "lagfib/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lagfib/bernoulli.hpp"
#include "lagfib/constants.hpp"
#include "lagfib/errors.hpp"

namespace lagfib {

namespace {

constexpr int kGuard = 15;

HPReal hp_from_q(const mpq_class& q, int digits) {
    HPReal num = HPReal::from_bigint(q.get_num(), digits);
    HPReal den = HPReal::from_bigint(q.get_den(), digits);
    return num / den;
}

// Smallest m such that the Stirling-term estimate
//   |B_2m| / (2m (2m-1) |w|^(2m-1)) * sec(arg(w)/2)^(2m+1)
// drops below 10^-d, or 0 if no m <= 96 reaches it at this w.
// |B_2m| ~ 2 (2m)! / (2 pi)^(2m); everything in double logs.
int stirling_terms(double re_w, double im_w, int d) {
    const double abs_w = std::hypot(re_w, im_w);
    const double half_arg = 0.5 * std::atan2(std::abs(im_w), re_w);
    const double c = std::cos(half_arg);
    if (c <= 0.1) return 0;
    const double ln_sec = -std::log(c);
    const double target = -d * std::log(10.0);
    for (int m = 2; m <= 96; ++m) {
        double lb = std::lgamma(2.0 * m + 1) - 2.0 * m * std::log(2 * M_PI) +
                    std::log(2.0);
        double lt = lb - std::log(2.0 * m * (2.0 * m - 1)) -
                    (2.0 * m - 1) * std::log(abs_w) + (2.0 * m + 1) * ln_sec;
        if (lt < target) return m;
    }
    return 0;
}

// ln Gamma(w) by the Stirling series; caller guarantees convergence at w.
HPComplex ln_gamma_stirling(const HPComplex& w, int digits, int terms) {
    const int d = digits;
    HPComplex lw = log(w);
    HPComplex res = (w - HPComplex{HPReal(0.5, d), HPReal(d)}) * lw - w;
    MathConstants mc = MathConstants::at(d);
    res += HPComplex{mc.ln_2pi * HPReal(0.5, d), HPReal(d)};

    HPComplex w2 = w * w;
    HPComplex wpow = w;  // w^(2m-1)
    for (int m = 1; m <= terms; ++m) {
        if (m > 1) wpow *= w2;
        HPReal coef = hp_from_q(bernoulli(2 * m), d) /
                      HPReal(static_cast<long>(2 * m) * (2 * m - 1), d);
        res += HPComplex{coef, HPReal(d)} / wpow;
    }
    return res;
}

HPComplex round_to(const HPComplex& z, int digits) {
    HPReal rr(digits), ri(digits);
    mpfr_set(rr.raw(), z.re().raw(), MPFR_RNDN);
    mpfr_set(ri.raw(), z.im().raw(), MPFR_RNDN);
    return {std::move(rr), std::move(ri)};
}

}  // namespace

HPComplex gamma_complex(const HPComplex& z, const PrecisionContext& ctx) {
    const int d = ctx.digits + kGuard;
    const double re = z.re().to_double();
    const double im = z.im().to_double();

    if (std::abs(im) > 1e4)
        throw DomainError("gamma_complex: |Im z| above supported range");

    // Pole detection: z within tolerance of a nonpositive integer.
    const double pole_tol = std::pow(10.0, -ctx.digits / 2.0);
    if (re < 0.5 && std::abs(im) < 1.0) {
        HPReal nearest = floor(z.re() + HPReal(0.5, d));
        if (nearest.sign() <= 0) {
            HPReal dist = hypot(z.re() - nearest, z.im());
            if (dist < pole_tol)
                throw PoleError("gamma_complex: argument at a nonpositive integer");
        }
    }

    // Shift right until the Stirling tail can reach 10^-d with a sane angle.
    // The shift count depends only on (Re z, |Im z|), so conjugate inputs
    // take identical paths.
    int shift = 0;
    int terms = 0;
    const double base = 0.367 * d + 8.0;
    double want = std::max(1.0, base - 0.55 * std::abs(im));
    while (true) {
        if (re + shift < want)
            shift = static_cast<int>(want - re) + 1;
        terms = stirling_terms(re + shift, im, d);
        if (terms > 0) break;
        want += base;
        if (want > 64.0 * base)
            throw InternalError("gamma_complex: series cannot converge");
    }

    HPComplex w = z + HPComplex{HPReal(static_cast<long>(shift), d), HPReal(d)};
    HPComplex g = exp(ln_gamma_stirling(w, d, terms));
    // Gamma(z) = Gamma(z + shift) / prod_{r=0}^{shift-1} (z + r)
    for (int r = 0; r < shift; ++r)
        g /= z + HPComplex{HPReal(static_cast<long>(r), d), HPReal(d)};

    return round_to(g, ctx.digits);
}

namespace {

// Euler-Maclaurin zeta(s) for Re s >= 1, s != 1:
//   sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2
//   + sum_m B_2m/(2m)! (s)(s+1)...(s+2m-2) N^(-s-2m+1).
// N is sized so the correction terms shrink well below the target before
// the Pochhammer growth can turn them around.
HPComplex zeta_em(const HPComplex& s, int d) {
    const double t = std::abs(s.im().to_double());
    const long N = std::max<long>(32, static_cast<long>(1.6 * d + 1.2 * t));

    HPComplex sum{HPReal(d), HPReal(d)};
    for (long n = 1; n < N; ++n) {
        HPReal lnn = ln(HPReal(n, d));
        sum += exp(-(s * HPComplex{lnn, HPReal(d)}));
    }

    HPReal lnN = ln(HPReal(N, d));
    HPComplex Nms = exp(-(s * HPComplex{lnN, HPReal(d)}));  // N^-s
    HPComplex one{HPReal(1L, d), HPReal(d)};
    HPComplex NC{HPReal(N, d), HPReal(d)};
    sum += Nms * NC / (s - one);   // N^(1-s)/(s-1)
    sum += Nms * HPReal(0.5, d);   // N^-s / 2

    HPComplex poch = s;            // (s)(s+1)...(s+2m-2)
    HPComplex npow = Nms * NC;     // N^(1-s)
    HPReal N2(static_cast<long>(N), d);
    N2 *= N2;
    mpz_class fact = 1;            // (2m)!
    const double target = -(d + 2) * std::log(10.0);
    double prev = std::numeric_limits<double>::infinity();
    for (unsigned m = 1; m <= 1024; ++m) {
        fact *= (2 * m) * (2 * m - 1);
        npow /= N2;                // N^(1-s-2m)
        if (m > 1) {
            const long a = 2 * (m - 1) - 1;
            poch *= s + HPComplex{HPReal(a, d), HPReal(d)};
            poch *= s + HPComplex{HPReal(a + 1, d), HPReal(d)};
        }
        mpq_class c = bernoulli(2 * m) / mpq_class(fact);
        HPComplex term = poch * HPComplex{hp_from_q(c, d), HPReal(d)} * npow;
        sum += term;
        const double mag = std::log(abs(term).to_double() + 1e-320);
        if (mag < target) break;
        if (mag >= prev)
            throw InternalError("zeta_em: correction terms stopped decreasing");
        prev = mag;
    }
    return sum;
}

}  // namespace

HPComplex zeta_one_plus_it(const HPReal& t, const PrecisionContext& ctx) {
    const int d = ctx.digits + kGuard;
    const double pole_tol = std::pow(10.0, -ctx.digits / 2.0);
    if (abs(t) < pole_tol)
        throw PoleError("zeta_one_plus_it: s = 1 is a pole");
    if (abs(t) > 1e4)
        throw DomainError("zeta_one_plus_it: |t| above supported range");

    HPReal td(d);
    mpfr_set(td.raw(), t.raw(), MPFR_RNDN);
    return round_to(zeta_em(HPComplex{HPReal(1L, d), std::move(td)}, d),
                    ctx.digits);
}

HPReal zeta_real(const HPReal& s, const PrecisionContext& ctx) {
    const int d = ctx.digits + kGuard;
    if (s <= 1.0) throw DomainError("zeta_real: requires s > 1");
    HPReal sd(d);
    mpfr_set(sd.raw(), s.raw(), MPFR_RNDN);
    HPComplex z = zeta_em(HPComplex{std::move(sd), HPReal(d)}, d);
    HPReal r(ctx.digits);
    mpfr_set(r.raw(), z.re().raw(), MPFR_RNDN);
    return r;
}

}  // namespace lagfib
