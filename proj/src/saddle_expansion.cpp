#include "lagfib/saddle_expansion.hpp"

#include <cmath>

#include "lagfib/errors.hpp"

namespace lagfib {

namespace {

constexpr int kGuard = 15;

HPReal round_to(const HPReal& v, int digits) {
    HPReal out(digits);
    mpfr_set(out.raw(), v.raw(), MPFR_RNDN);
    return out;
}

void warn_eta(const HPReal& eta) {
    if (!(eta > 0.0)) throw DomainError("eta must be positive");
    // eta >= 1 leaves the asymptotic regime; callers may still evaluate.
}

}  // namespace

EtaParam EtaParam::of(unsigned k, const LargeArgument& n,
                      const PrecisionContext& ctx) {
    if (k < 2) throw DomainError("EtaParam: k must be >= 2");
    const int d = ctx.digits + kGuard;
    HPReal L(d);
    mpfr_set(L.raw(), n.ln_value().raw(), MPFR_RNDN);
    if (!(L > 0.0)) throw DomainError("EtaParam: requires n > 1");
    EtaParam p;
    p.k = k;
    p.eta = const_ln(k, d) / L;
    warn_eta(p.eta);
    return p;
}

EtaParam EtaParam::from_eta(unsigned k, HPReal eta) {
    if (k < 2) throw DomainError("EtaParam: k must be >= 2");
    warn_eta(eta);
    EtaParam p;
    p.k = k;
    p.eta = std::move(eta);
    return p;
}

namespace eta_groups {

HPReal g_m2(const HPReal& lnk, const HPReal& eta) {
    return lnk / (eta * eta * 2L);
}

HPReal g_m1(const HPReal& lnk, const HPReal& eta, const HPReal& le) {
    return (le * 2L + lnk + 2L) / (eta * 2L);
}

HPReal g_0(const HPReal& lnk, const HPReal& le) {
    return le * le / (lnk * 2L) + le - ln(lnk) / 2L + lnk / 8L;
}

HPReal g_1(const HPReal& lnk, const HPReal& eta, const HPReal& le) {
    const int d = lnk.digits();
    HPReal br = le * le / (lnk * lnk * 2L) + le / lnk +
                HPReal(11L, d) / 24L + 1L / (lnk * 2L);
    return -(eta * br);
}

HPReal g_2(const HPReal& lnk, const HPReal& eta, const HPReal& le) {
    const int d = lnk.digits();
    HPReal lnk2 = lnk * lnk;
    HPReal br = le * le * le / (lnk2 * lnk * 6L);
    br += (1L + 1L / lnk) * le * le / (lnk2 * 2L);
    br += (HPReal(11L, d) / 24L + 3L / (lnk * 2L)) * le / lnk;
    br += HPReal(1L, d) / 8L + 1L / lnk + 1L / (lnk2 * 4L);
    return eta * eta * br;
}

}  // namespace eta_groups

namespace logn_groups {

HPReal g_L2(const HPReal& lnk, const HPReal& L) { return L * L / (lnk * 2L); }

HPReal g_L1(const HPReal& lnk, const HPReal& llk, const HPReal& L,
            const HPReal& LL) {
    const int d = lnk.digits();
    return L * (-(LL / lnk) + llk / lnk + HPReal(0.5, d) + 1L / lnk);
}

HPReal g_L0(const HPReal& lnk, const HPReal& llk, const HPReal& LL) {
    HPReal q = lnk + llk * 2L;
    return LL * LL / (lnk * 2L) - LL * (llk / lnk + 1L) + q * q / (lnk * 8L);
}

HPReal g_Lm1(const HPReal& lnk, const HPReal& llk, const HPReal& L,
             const HPReal& LL) {
    const int d = lnk.digits();
    HPReal lnk2 = lnk * lnk;
    HPReal br = LL * LL / (lnk2 * 2L) - (LL / lnk) * (1L + llk / lnk) +
                HPReal(11L, d) / 24L + 1L / (lnk * 2L) + llk / lnk +
                llk * llk / (lnk2 * 2L);
    return -(lnk / L) * br;
}

HPReal g_Lm2(const HPReal& lnk, const HPReal& llk, const HPReal& L,
             const HPReal& LL) {
    const int d = lnk.digits();
    HPReal lnk2 = lnk * lnk;
    HPReal lnk3 = lnk2 * lnk;
    HPReal llk2 = llk * llk;
    HPReal br = LL * LL * LL / (lnk3 * 6L);
    br -= (LL * LL / (lnk2 * 2L)) * (1L + 1L / lnk + llk / lnk);
    br += (LL / lnk) * (HPReal(11L, d) / 24L + 3L / (lnk * 2L) + llk / lnk +
                        llk / lnk2 + llk2 / (lnk2 * 2L));
    br -= HPReal(1L, d) / 8L + 1L / lnk + 1L / (lnk2 * 4L) +
          llk * 11L / (lnk * 24L) + llk * 3L / (lnk2 * 2L) +
          llk2 / (lnk2 * 2L) + llk2 / (lnk3 * 2L) + llk2 * llk / (lnk3 * 6L);
    return -(lnk2 / (L * L)) * br;
}

}  // namespace logn_groups

HPReal saddle_j0(const EtaParam& p, const HPReal& delta_j,
                 const PrecisionContext& ctx) {
    const int d = ctx.digits + kGuard;
    HPReal eta(d);
    mpfr_set(eta.raw(), p.eta.raw(), MPFR_RNDN);
    if (!(eta < 1.0)) throw DomainError("saddle_j0: requires eta < 1");
    HPReal lnk = const_ln(p.k, d);
    HPReal le = ln(eta);
    HPReal lke = le / lnk;  // log_k eta
    HPReal lnk2 = lnk * lnk;

    HPReal j0 = 1L / eta + lke + 1L - delta_j;
    j0 -= eta * (1L + lke) / lnk;
    j0 += eta * eta * (1L + lke) / (lnk * 2L) * (2L / lnk + 1L + lke);
    HPReal br3 = 6L / lnk2 + 9L / lnk + 2L + lke * (4L + 9L / lnk) +
                 le * le / lnk2 * 2L;
    j0 -= eta * eta * eta * (1L + lke) / (lnk * 6L) * br3;
    return round_to(j0, ctx.digits);
}

HPReal delta_j_choice(const EtaParam& p, const PrecisionContext& ctx) {
    const int d = ctx.digits + kGuard;
    HPReal eta(d);
    mpfr_set(eta.raw(), p.eta.raw(), MPFR_RNDN);
    HPReal v = HPReal(0.5, d) + eta * eta / (const_ln(p.k, d) * 24L);
    return round_to(v, ctx.digits);
}

ExpansionResult ln_S_expansion_eta(const EtaParam& p, int order,
                                   const PrecisionContext& ctx) {
    if (order < -2 || order > 2)
        throw DomainError("ln_S_expansion_eta: order must lie in [-2, 2]");
    const int d = ctx.digits + kGuard;
    HPReal eta(d);
    mpfr_set(eta.raw(), p.eta.raw(), MPFR_RNDN);
    if (!(eta < 1.0)) throw DomainError("ln_S_expansion_eta: requires eta < 1");
    HPReal lnk = const_ln(p.k, d);
    HPReal le = ln(eta);

    HPReal v = eta_groups::g_m2(lnk, eta);
    if (order >= -1) v += eta_groups::g_m1(lnk, eta, le);
    if (order >= 0) v += eta_groups::g_0(lnk, le);
    if (order >= 1) v += eta_groups::g_1(lnk, eta, le);
    if (order >= 2) v += eta_groups::g_2(lnk, eta, le);

    HPReal le4 = le * le;
    le4 *= le4;
    HPReal scale = abs(pow_si(eta, order + 1) * le4);
    return {round_to(v, ctx.digits), order, round_to(scale, ctx.digits)};
}

ExpansionResult ln_S_expansion_logn(unsigned k, const LargeArgument& n,
                                    const PrecisionContext& ctx) {
    if (k < 2) throw DomainError("ln_S_expansion_logn: k must be >= 2");
    const int d = ctx.digits + kGuard;
    HPReal L(d);
    mpfr_set(L.raw(), n.ln_value().raw(), MPFR_RNDN);
    HPReal lnk = const_ln(k, d);
    if (!(L >= lnk * 2L))
        throw DomainError("ln_S_expansion_logn: requires n >= k^2");
    HPReal LL = ln(L);
    HPReal llk = ln(lnk);

    HPReal v = logn_groups::g_L2(lnk, L);
    v += logn_groups::g_L1(lnk, llk, L, LL);
    v += logn_groups::g_L0(lnk, llk, LL);
    v += logn_groups::g_Lm1(lnk, llk, L, LL);
    v += logn_groups::g_Lm2(lnk, llk, L, LL);

    HPReal LL4 = LL * LL;
    LL4 *= LL4;
    HPReal scale = LL4 / (L * L * L);
    return {round_to(v, ctx.digits), 2, round_to(scale, ctx.digits)};
}

HPReal phi_summand_ln(unsigned k, const LargeArgument& n, long j,
                      const PrecisionContext& ctx) {
    return term_ln(k, n, j, ctx);
}

HPReal gaussian_width_check(const EtaParam& p, const PrecisionContext& ctx) {
    const int d = ctx.digits + kGuard;
    HPReal eta(d);
    mpfr_set(eta.raw(), p.eta.raw(), MPFR_RNDN);
    if (!(eta < 1.0)) throw DomainError("gaussian_width_check: requires eta < 1");
    HPReal lnk = const_ln(p.k, d);
    HPReal v = lnk + eta - eta * eta * (1L + ln(eta) / lnk);
    return round_to(v, ctx.digits);
}

HPReal phi_summand_ln_real(unsigned k, const HPReal& ln_n, const HPReal& j,
                           const PrecisionContext& ctx) {
    if (k < 2) throw DomainError("phi_summand_ln_real: k must be >= 2");
    if (!(j > 0.0)) throw DomainError("phi_summand_ln_real: requires j > 0");
    const int d = ctx.digits + kGuard;
    HPReal jj(d), L(d);
    mpfr_set(jj.raw(), j.raw(), MPFR_RNDN);
    mpfr_set(L.raw(), ln_n.raw(), MPFR_RNDN);
    // ln j! = lngamma(j + 1)
    HPReal lg(d);
    HPReal jp1 = jj + 1L;
    mpfr_lngamma(lg.raw(), jp1.raw(), MPFR_RNDN);
    HPReal v = jj * L - lg - jj * (jj - 1L) / 2L * const_ln(k, d);
    return round_to(v, ctx.digits);
}

}  // namespace lagfib
