#pragma once

#include "lagfib/hpreal.hpp"

namespace lagfib {

// Complex scalar over HPReal; both parts share one precision.
class HPComplex {
  public:
    explicit HPComplex(int digits = HPReal::kMinDigits)
        : re_(digits), im_(digits) {}
    HPComplex(HPReal re, HPReal im);
    HPComplex(double re, double im, int digits)
        : re_(re, digits), im_(im, digits) {}

    const HPReal& re() const { return re_; }
    const HPReal& im() const { return im_; }
    HPReal& re() { return re_; }
    HPReal& im() { return im_; }
    int digits() const { return re_.digits(); }

    HPComplex operator-() const { return {-re_, -im_}; }
    HPComplex& operator+=(const HPComplex& o);
    HPComplex& operator-=(const HPComplex& o);
    HPComplex& operator*=(const HPComplex& o);
    HPComplex& operator/=(const HPComplex& o);

    friend HPComplex operator+(HPComplex a, const HPComplex& b) { return a += b; }
    friend HPComplex operator-(HPComplex a, const HPComplex& b) { return a -= b; }
    friend HPComplex operator*(HPComplex a, const HPComplex& b) { return a *= b; }
    friend HPComplex operator/(HPComplex a, const HPComplex& b) { return a /= b; }

    HPComplex& operator*=(const HPReal& s);
    HPComplex& operator/=(const HPReal& s);
    friend HPComplex operator*(HPComplex a, const HPReal& s) { return a *= s; }
    friend HPComplex operator/(HPComplex a, const HPReal& s) { return a /= s; }

    std::string str(int sig) const;

  private:
    HPReal re_, im_;
};

HPComplex conj(const HPComplex& z);
HPReal abs(const HPComplex& z);
HPReal arg(const HPComplex& z);
// Principal-branch logarithm.
HPComplex log(const HPComplex& z);
HPComplex exp(const HPComplex& z);
// exp(i*theta) for real theta.
HPComplex unit_phase(const HPReal& theta);

}  // namespace lagfib
