#include "lagfib/mahler_series.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <vector>

#include "lagfib/bernoulli.hpp"
#include "lagfib/constants.hpp"
#include "lagfib/errors.hpp"

namespace lagfib {

namespace {

constexpr int kGuard = 15;
constexpr long kLnFactSwitch = 2048;

// Memoized ln j! for j <= kLnFactSwitch, one table per working precision.
class LnFactTable {
  public:
    HPReal get(long j, int digits) {
        std::lock_guard<std::mutex> lock(mu_);
        auto& tab = per_digits_[digits];
        if (tab.empty()) tab.emplace_back(HPReal(0L, digits));
        while (static_cast<long>(tab.size()) <= j) {
            const long i = static_cast<long>(tab.size());
            tab.push_back(tab.back() + ln(HPReal(i, digits)));
        }
        return tab[j];
    }

  private:
    std::mutex mu_;
    std::map<int, std::vector<HPReal>> per_digits_;
};

LnFactTable& lnfact_table() {
    static LnFactTable t;
    return t;
}

// ln j! for large j: Stirling series with Bernoulli corrections,
//   (j+1/2) ln j - j + ln(2 pi)/2 + sum_m B_2m / (2m(2m-1) j^(2m-1)).
HPReal ln_factorial_stirling(long j, int digits) {
    HPReal x(j, digits);
    HPReal lx = ln(x);
    MathConstants mc = MathConstants::at(digits);
    HPReal res = (x + HPReal(0.5, digits)) * lx - x + mc.ln_2pi * HPReal(0.5, digits);
    HPReal x2 = x * x;
    HPReal xpow = x;
    const double target = -(digits)*std::log(10.0);
    for (unsigned m = 1; m <= 64; ++m) {
        if (m > 1) xpow *= x2;
        mpq_class b = bernoulli(2 * m);
        HPReal coef = HPReal::from_bigint(b.get_num(), digits) /
                      HPReal::from_bigint(b.get_den(), digits) /
                      HPReal(static_cast<long>(2 * m) * (2 * m - 1), digits);
        HPReal term = coef / xpow;
        res += term;
        if (std::log(std::abs(term.to_double()) + 1e-320) < target) break;
    }
    return res;
}

HPReal ln_factorial(long j, int digits) {
    if (j <= kLnFactSwitch) return lnfact_table().get(j, digits);
    return ln_factorial_stirling(j, digits);
}

bool digits_ok_for_series(const PrecisionContext& ctx) { return ctx.digits >= 30; }

}  // namespace

LargeArgument LargeArgument::from_u64(std::uint64_t n, int digits) {
    return from_bigint(mpz_class(static_cast<unsigned long>(n)), digits);
}

LargeArgument LargeArgument::from_bigint(const mpz_class& n, int digits) {
    if (n < 0) throw DomainError("LargeArgument: negative n");
    LargeArgument a;
    a.exact_ = n;
    HPReal v = HPReal::from_bigint(n, digits);
    a.ln_n_ = ln(v);  // -inf at n = 0
    return a;
}

LargeArgument LargeArgument::from_ln(HPReal ln_n) {
    LargeArgument a;
    a.ln_n_ = std::move(ln_n);
    return a;
}

LargeArgument LargeArgument::parse(std::string_view expr, int digits) {
    const auto caret = expr.find('^');
    if (caret == std::string_view::npos) {
        mpz_class n;
        if (n.set_str(std::string(expr), 10) != 0)
            throw DomainError("LargeArgument: cannot parse '" + std::string(expr) + "'");
        return from_bigint(n, digits);
    }
    mpz_class base;
    if (base.set_str(std::string(expr.substr(0, caret)), 10) != 0 || base < 2)
        throw DomainError("LargeArgument: bad base in '" + std::string(expr) + "'");
    errno = 0;
    char* end = nullptr;
    const std::string es(expr.substr(caret + 1));
    const unsigned long e = std::strtoul(es.c_str(), &end, 10);
    if (errno || !end || *end != '\0')
        throw DomainError("LargeArgument: bad exponent in '" + std::string(expr) + "'");
    // Keep the integer when it stays reasonably small; otherwise log-only.
    const double est_bits = e * std::log2(base.get_d());
    HPReal ln_n = ln(HPReal::from_bigint(base, digits)) * static_cast<long>(e);
    if (est_bits <= 400000.0) {
        mpz_class n;
        mpz_pow_ui(n.get_mpz_t(), base.get_mpz_t(), e);
        LargeArgument a;
        a.exact_ = std::move(n);
        a.ln_n_ = std::move(ln_n);
        return a;
    }
    return from_ln(std::move(ln_n));
}

LargeArgument LargeArgument::times(unsigned k) const {
    LargeArgument a;
    if (exact_) a.exact_ = *exact_ * static_cast<unsigned long>(k);
    const int d = ln_n_.digits();
    if (exact_ && *exact_ == 0) {
        a.ln_n_ = ln(HPReal(0L, d));
    } else {
        a.ln_n_ = ln_n_ + const_ln(k, d);
    }
    return a;
}

std::string LargeArgument::describe() const {
    if (exact_ && mpz_sizeinbase(exact_->get_mpz_t(), 10) <= 40)
        return exact_->get_str();
    return "exp(" + ln_n_.str(20) + ")";
}

HPReal term_ln(unsigned k, const LargeArgument& n, long j,
               const PrecisionContext& ctx) {
    if (k < 2) throw DomainError("term_ln: k must be >= 2");
    if (j < 0) throw DomainError("term_ln: j must be >= 0");
    const int d = ctx.digits + kGuard;
    if (j == 0) return HPReal(0L, ctx.digits);
    HPReal lnn(d);
    mpfr_set(lnn.raw(), n.ln_value().raw(), MPFR_RNDN);
    HPReal v = lnn * j - ln_factorial(j, d);
    // C(j,2) ln k, exact binomial.
    mpz_class c2 = mpz_class(j) * (j - 1) / 2;
    v -= HPReal::from_bigint(c2, d) * const_ln(k, d);
    HPReal out(ctx.digits);
    mpfr_set(out.raw(), v.raw(), MPFR_RNDN);
    return out;
}

long peak_index(unsigned k, const LargeArgument& n, const PrecisionContext& ctx) {
    if (n.is_zero()) return 0;
    const double lnn = n.ln_value().to_double();
    const double lnk = std::log(static_cast<double>(k));
    long jc = 0;
    if (lnn >= 1.0) {
        // Term ratio ~ 1 at n = k^(j-1) j: iterate j = 1 + (ln n - ln j)/ln k.
        double j = std::max(1.0, lnn / lnk);
        for (int it = 0; it < 64; ++it) j = 1.0 + (lnn - std::log(j)) / lnk;
        jc = std::max<long>(0, std::lround(j));
    }
    // Small arguments fall through with jc = 0; the scan settles them.

    auto t = [&](long idx) { return term_ln(k, n, idx, ctx); };
    HPReal cur = t(jc);
    while (true) {
        HPReal up = t(jc + 1);
        if (up > cur) {
            ++jc;
            cur = std::move(up);
            continue;
        }
        break;
    }
    while (jc > 0) {
        HPReal down = t(jc - 1);
        if (down >= cur) {  // ties resolve to the smaller index
            --jc;
            cur = std::move(down);
            continue;
        }
        break;
    }
    return jc;
}

HPReal ln_S(unsigned k, const LargeArgument& n, const PrecisionContext& ctx) {
    if (!digits_ok_for_series(ctx))
        throw DomainError("ln_S: context must carry >= 30 digits");
    if (n.is_zero()) return HPReal(0L, ctx.digits);  // only the j = 0 term

    const int d = ctx.digits + kGuard;
    PrecisionContext work = ctx.with_digits(d);

    // Effective tail tolerance tightens with the requested precision so that
    // escalating ctx.digits always refines the value.
    const double tail_log10 =
        std::min(std::log10(ctx.series_tail_tol), -(ctx.digits + 5.0));
    HPReal tol = exp(HPReal(tail_log10 * std::log(10.0), d));

    const long jstar = peak_index(k, n, work);
    HPReal t0 = term_ln(k, n, jstar, work);
    HPReal acc(1L, d);
    for (long j = jstar + 1;; ++j) {
        HPReal inc = exp(term_ln(k, n, j, work) - t0);
        acc += inc;
        if (inc < tol) break;
    }
    for (long j = jstar - 1; j >= 0; --j) {
        HPReal inc = exp(term_ln(k, n, j, work) - t0);
        acc += inc;
        if (inc < tol) break;
    }
    HPReal v = t0 + ln(acc);
    HPReal out(ctx.digits);
    mpfr_set(out.raw(), v.raw(), MPFR_RNDN);
    return out;
}

HPReal mahler_b(unsigned k, const LargeArgument& n, const PrecisionContext& ctx) {
    if (!digits_ok_for_series(ctx))
        throw DomainError("mahler_b: context must carry >= 30 digits");
    if (!(n.ln_value() >= std::log(2.0) * 0.999999))
        throw DomainError("mahler_b: requires n >= 2");

    // |ln S| grows like ln^2 n; widen the working precision so the
    // cancellation ln S(kn) - ln S(n) still leaves ctx.digits good digits.
    const double mag = n.ln_value().to_double();
    const double lnS_scale =
        mag * mag / (2.0 * std::log(static_cast<double>(k))) + 10.0;
    const int extra = static_cast<int>(std::ceil(std::log10(lnS_scale))) + 2;
    PrecisionContext work = ctx.with_digits(ctx.digits + extra + kGuard);

    HPReal ls_kn = ln_S(k, n.times(k), work);
    HPReal ls_n = ln_S(k, n, work);
    const int d = work.digits;
    HPReal lnn(d);
    mpfr_set(lnn.raw(), n.ln_value().raw(), MPFR_RNDN);
    HPReal v = exp(ls_kn - ls_n + ln(lnn) - lnn);
    HPReal out(ctx.digits);
    mpfr_set(out.raw(), v.raw(), MPFR_RNDN);
    return out;
}

}  // namespace lagfib
