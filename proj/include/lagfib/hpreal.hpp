#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <string_view>
#include <utility>

namespace lagfib {

// Arbitrary-precision real with an explicit decimal-digit precision tag.
// Arithmetic between two values carries the minimum of the two precisions;
// the tag never drops below 15 digits.  All rounding is to nearest.
class HPReal {
  public:
    static constexpr int kMinDigits = 15;

    explicit HPReal(int digits = kMinDigits);
    HPReal(double x, int digits);
    HPReal(long x, int digits);
    HPReal(unsigned long x, int digits);
    HPReal(const HPReal& o);
    HPReal(HPReal&& o) noexcept;
    HPReal& operator=(const HPReal& o);
    HPReal& operator=(HPReal&& o) noexcept;
    ~HPReal();

    static HPReal from_string(std::string_view dec, int digits);
    static HPReal from_bigint(const mpz_class& z, int digits);

    int digits() const { return digits_; }
    mpfr_prec_t prec_bits() const { return mpfr_get_prec(v_); }
    mpfr_srcptr raw() const { return v_; }
    mpfr_ptr raw() { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_inf() const { return mpfr_inf_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    // Decimal string with `sig` significant digits ("%.*Rg"), locale-free.
    std::string str(int sig) const;
    // Fixed-point with `frac` digits after the point ("%.*Rf").
    std::string str_fixed(int frac) const;

    HPReal operator-() const;
    HPReal& operator+=(const HPReal& o);
    HPReal& operator-=(const HPReal& o);
    HPReal& operator*=(const HPReal& o);
    HPReal& operator/=(const HPReal& o);

    friend HPReal operator+(HPReal a, const HPReal& b) { return a += b; }
    friend HPReal operator-(HPReal a, const HPReal& b) { return a -= b; }
    friend HPReal operator*(HPReal a, const HPReal& b) { return a *= b; }
    friend HPReal operator/(HPReal a, const HPReal& b) { return a /= b; }

    friend HPReal operator+(const HPReal& a, long b);
    friend HPReal operator+(long a, const HPReal& b) { return b + a; }
    friend HPReal operator-(const HPReal& a, long b);
    friend HPReal operator-(long a, const HPReal& b);
    friend HPReal operator*(const HPReal& a, long b);
    friend HPReal operator*(long a, const HPReal& b) { return b * a; }
    friend HPReal operator/(const HPReal& a, long b);
    friend HPReal operator/(long a, const HPReal& b);

    friend int cmp(const HPReal& a, const HPReal& b) { return mpfr_cmp(a.v_, b.v_); }
    friend bool operator<(const HPReal& a, const HPReal& b) { return cmp(a, b) < 0; }
    friend bool operator>(const HPReal& a, const HPReal& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const HPReal& a, const HPReal& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const HPReal& a, const HPReal& b) { return cmp(a, b) >= 0; }
    friend bool operator==(const HPReal& a, const HPReal& b) { return cmp(a, b) == 0; }
    friend bool operator<(const HPReal& a, double b) { return mpfr_cmp_d(a.v_, b) < 0; }
    friend bool operator>(const HPReal& a, double b) { return mpfr_cmp_d(a.v_, b) > 0; }
    friend bool operator<=(const HPReal& a, double b) { return mpfr_cmp_d(a.v_, b) <= 0; }
    friend bool operator>=(const HPReal& a, double b) { return mpfr_cmp_d(a.v_, b) >= 0; }

    static mpfr_prec_t bits_for(int digits);

  private:
    mpfr_t v_;
    int digits_;
};

HPReal abs(const HPReal& x);
HPReal ln(const HPReal& x);
HPReal log2(const HPReal& x);
HPReal exp(const HPReal& x);
HPReal sqrt(const HPReal& x);
HPReal pow(const HPReal& base, const HPReal& e);
HPReal pow_si(const HPReal& base, long e);
HPReal sin(const HPReal& x);
HPReal cos(const HPReal& x);
void sin_cos(HPReal& s, HPReal& c, const HPReal& x);
HPReal sinh(const HPReal& x);
HPReal atan2(const HPReal& y, const HPReal& x);
HPReal hypot(const HPReal& x, const HPReal& y);
HPReal floor(const HPReal& x);
// Fractional part in [0,1) (x minus floor).
HPReal frac(const HPReal& x);

HPReal const_pi(int digits);
HPReal const_ln2(int digits);
HPReal const_ln(unsigned long k, int digits);

}  // namespace lagfib
