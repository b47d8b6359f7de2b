#include "lagfib/hpreal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "lagfib/errors.hpp"

namespace lagfib {

mpfr_prec_t HPReal::bits_for(int digits) {
    // 3.3220 > log2(10); +8 guard bits so the last decimal digit is honest.
    return static_cast<mpfr_prec_t>(digits * 3.3220) + 8;
}

static int clamp_digits(int d) { return std::max(d, HPReal::kMinDigits); }

HPReal::HPReal(int digits) : digits_(clamp_digits(digits)) {
    mpfr_init2(v_, bits_for(digits_));
    mpfr_set_zero(v_, 1);
}

HPReal::HPReal(double x, int digits) : digits_(clamp_digits(digits)) {
    mpfr_init2(v_, bits_for(digits_));
    mpfr_set_d(v_, x, MPFR_RNDN);
}

HPReal::HPReal(long x, int digits) : digits_(clamp_digits(digits)) {
    mpfr_init2(v_, bits_for(digits_));
    mpfr_set_si(v_, x, MPFR_RNDN);
}

HPReal::HPReal(unsigned long x, int digits) : digits_(clamp_digits(digits)) {
    mpfr_init2(v_, bits_for(digits_));
    mpfr_set_ui(v_, x, MPFR_RNDN);
}

HPReal::HPReal(const HPReal& o) : digits_(o.digits_) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

HPReal::HPReal(HPReal&& o) noexcept : digits_(o.digits_) {
    mpfr_init2(v_, 64);
    mpfr_swap(v_, o.v_);
}

HPReal& HPReal::operator=(const HPReal& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
        digits_ = o.digits_;
    }
    return *this;
}

HPReal& HPReal::operator=(HPReal&& o) noexcept {
    if (this != &o) {
        mpfr_swap(v_, o.v_);
        digits_ = o.digits_;
    }
    return *this;
}

HPReal::~HPReal() { mpfr_clear(v_); }

HPReal HPReal::from_string(std::string_view dec, int digits) {
    HPReal r(digits);
    std::string s(dec);
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
        throw DomainError("unparsable decimal literal: " + s);
    return r;
}

HPReal HPReal::from_bigint(const mpz_class& z, int digits) {
    HPReal r(digits);
    mpfr_set_z(r.v_, z.get_mpz_t(), MPFR_RNDN);
    return r;
}

std::string HPReal::str(int sig) const {
    char* out = nullptr;
    mpfr_asprintf(&out, "%.*Rg", sig, v_);
    std::string s(out);
    mpfr_free_str(out);
    return s;
}

std::string HPReal::str_fixed(int frac) const {
    char* out = nullptr;
    mpfr_asprintf(&out, "%.*Rf", frac, v_);
    std::string s(out);
    mpfr_free_str(out);
    return s;
}

HPReal HPReal::operator-() const {
    HPReal r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
}

// The result of a binary op carries min(digits) per the precision contract.
#define LAGFIB_BINOP(op, fn)                                   \
    HPReal& HPReal::operator op(const HPReal& o) {             \
        const int d = std::min(digits_, o.digits_);            \
        HPReal r(d);                                           \
        fn(r.raw(), v_, o.v_, MPFR_RNDN);                      \
        *this = std::move(r);                                  \
        return *this;                                          \
    }

LAGFIB_BINOP(+=, mpfr_add)
LAGFIB_BINOP(-=, mpfr_sub)
LAGFIB_BINOP(*=, mpfr_mul)
LAGFIB_BINOP(/=, mpfr_div)
#undef LAGFIB_BINOP

HPReal operator+(const HPReal& a, long b) {
    HPReal r(a.digits());
    mpfr_add_si(r.raw(), a.raw(), b, MPFR_RNDN);
    return r;
}
HPReal operator-(const HPReal& a, long b) {
    HPReal r(a.digits());
    mpfr_sub_si(r.raw(), a.raw(), b, MPFR_RNDN);
    return r;
}
HPReal operator-(long a, const HPReal& b) {
    HPReal r(b.digits());
    mpfr_si_sub(r.raw(), a, b.raw(), MPFR_RNDN);
    return r;
}
HPReal operator*(const HPReal& a, long b) {
    HPReal r(a.digits());
    mpfr_mul_si(r.raw(), a.raw(), b, MPFR_RNDN);
    return r;
}
HPReal operator/(const HPReal& a, long b) {
    HPReal r(a.digits());
    mpfr_div_si(r.raw(), a.raw(), b, MPFR_RNDN);
    return r;
}
HPReal operator/(long a, const HPReal& b) {
    HPReal r(b.digits());
    mpfr_si_div(r.raw(), a, b.raw(), MPFR_RNDN);
    return r;
}

#define LAGFIB_UNFN(name, fn)                  \
    HPReal name(const HPReal& x) {             \
        HPReal r(x.digits());                  \
        fn(r.raw(), x.raw(), MPFR_RNDN);       \
        return r;                              \
    }

LAGFIB_UNFN(abs, mpfr_abs)
LAGFIB_UNFN(ln, mpfr_log)
LAGFIB_UNFN(log2, mpfr_log2)
LAGFIB_UNFN(exp, mpfr_exp)
LAGFIB_UNFN(sqrt, mpfr_sqrt)
LAGFIB_UNFN(sin, mpfr_sin)
LAGFIB_UNFN(cos, mpfr_cos)
LAGFIB_UNFN(sinh, mpfr_sinh)
#undef LAGFIB_UNFN

HPReal floor(const HPReal& x) {
    HPReal r(x.digits());
    mpfr_floor(r.raw(), x.raw());
    return r;
}

HPReal frac(const HPReal& x) { return x - floor(x); }

HPReal pow(const HPReal& base, const HPReal& e) {
    const int d = std::min(base.digits(), e.digits());
    HPReal r(d);
    mpfr_pow(r.raw(), base.raw(), e.raw(), MPFR_RNDN);
    return r;
}

HPReal pow_si(const HPReal& base, long e) {
    HPReal r(base.digits());
    mpfr_pow_si(r.raw(), base.raw(), e, MPFR_RNDN);
    return r;
}

void sin_cos(HPReal& s, HPReal& c, const HPReal& x) {
    HPReal ss(x.digits()), cc(x.digits());
    mpfr_sin_cos(ss.raw(), cc.raw(), x.raw(), MPFR_RNDN);
    s = std::move(ss);
    c = std::move(cc);
}

HPReal atan2(const HPReal& y, const HPReal& x) {
    const int d = std::min(y.digits(), x.digits());
    HPReal r(d);
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}

HPReal hypot(const HPReal& x, const HPReal& y) {
    const int d = std::min(y.digits(), x.digits());
    HPReal r(d);
    mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}

HPReal const_pi(int digits) {
    HPReal r(digits);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

HPReal const_ln2(int digits) {
    HPReal r(digits);
    mpfr_const_log2(r.raw(), MPFR_RNDN);
    return r;
}

HPReal const_ln(unsigned long k, int digits) {
    HPReal r(digits);
    mpfr_set_ui(r.raw(), k, MPFR_RNDN);
    mpfr_log(r.raw(), r.raw(), MPFR_RNDN);
    return r;
}

}  // namespace lagfib
