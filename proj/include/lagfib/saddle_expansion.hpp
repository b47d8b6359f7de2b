#pragma once

#include "lagfib/expansion.hpp"
#include "lagfib/mahler_series.hpp"
#include "lagfib/precision.hpp"

namespace lagfib {

// Small parameter of the series expansion: eta = ln k / ln n = 1/log_k n.
struct EtaParam {
    unsigned k = 2;
    HPReal eta{HPReal::kMinDigits};

    static EtaParam of(unsigned k, const LargeArgument& n,
                       const PrecisionContext& ctx);
    static EtaParam from_eta(unsigned k, HPReal eta);
};

// The bracket groups of the eta-form expansion of ln S_k(n), one function
// per printed group so each can be pinned by its own test.  `le` = ln eta.
namespace eta_groups {
HPReal g_m2(const HPReal& lnk, const HPReal& eta);                      // eta^-2
HPReal g_m1(const HPReal& lnk, const HPReal& eta, const HPReal& le);    // eta^-1
HPReal g_0(const HPReal& lnk, const HPReal& le);                        // eta^0
HPReal g_1(const HPReal& lnk, const HPReal& eta, const HPReal& le);     // eta^1
HPReal g_2(const HPReal& lnk, const HPReal& eta, const HPReal& le);     // eta^2
}  // namespace eta_groups

// Likewise for the ln n-form: groups by power of 1/ln n.  `L` = ln n,
// `LL` = ln ln n, `llk` = ln ln k.
namespace logn_groups {
HPReal g_L2(const HPReal& lnk, const HPReal& L);
HPReal g_L1(const HPReal& lnk, const HPReal& llk, const HPReal& L,
            const HPReal& LL);
HPReal g_L0(const HPReal& lnk, const HPReal& llk, const HPReal& LL);
HPReal g_Lm1(const HPReal& lnk, const HPReal& llk, const HPReal& L,
             const HPReal& LL);
HPReal g_Lm2(const HPReal& lnk, const HPReal& llk, const HPReal& L,
             const HPReal& LL);
}  // namespace logn_groups

// Moving saddle location truncated through the eta^3 term.
HPReal saddle_j0(const EtaParam& p, const HPReal& delta_j,
                 const PrecisionContext& ctx);

// Symmetrizing offset Delta_j = 1/2 + eta^2/(24 ln k).
HPReal delta_j_choice(const EtaParam& p, const PrecisionContext& ctx);

// Eta-form expansion of ln S_k(n) including groups eta^-2 .. eta^order;
// error_scale = eta^(order+1) |ln eta|^4.
ExpansionResult ln_S_expansion_eta(const EtaParam& p, int order,
                                   const PrecisionContext& ctx);

// ln n-form of the same expansion, all printed groups;
// error_scale = ln^4 ln n / ln^3 n.
ExpansionResult ln_S_expansion_logn(unsigned k, const LargeArgument& n,
                                    const PrecisionContext& ctx);

// ln of the j-th summand (same contract as term_ln; shared implementation).
HPReal phi_summand_ln(unsigned k, const LargeArgument& n, long j,
                      const PrecisionContext& ctx);

// Quadratic coefficient of the Gaussian factor at the saddle:
//   ln k + eta - eta^2 (1 + ln eta / ln k);
// the discrete curvature of the summand exponent at j0 matches it to
// O(eta^2).
HPReal gaussian_width_check(const EtaParam& p, const PrecisionContext& ctx);

// Continuous extension of the summand exponent (real j via ln Gamma),
// used by curvature tests.
HPReal phi_summand_ln_real(unsigned k, const HPReal& ln_n, const HPReal& j,
                           const PrecisionContext& ctx);

}  // namespace lagfib
