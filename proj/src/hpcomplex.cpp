#include "lagfib/hpcomplex.hpp"

#include <algorithm>

namespace lagfib {

HPComplex::HPComplex(HPReal re, HPReal im) : re_(std::move(re)), im_(std::move(im)) {
    // Align both parts on the smaller precision.
    if (re_.digits() != im_.digits()) {
        const int d = std::min(re_.digits(), im_.digits());
        HPReal r(d), i(d);
        mpfr_set(r.raw(), re_.raw(), MPFR_RNDN);
        mpfr_set(i.raw(), im_.raw(), MPFR_RNDN);
        re_ = std::move(r);
        im_ = std::move(i);
    }
}

HPComplex& HPComplex::operator+=(const HPComplex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

HPComplex& HPComplex::operator-=(const HPComplex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

HPComplex& HPComplex::operator*=(const HPComplex& o) {
    HPReal r = re_ * o.re_ - im_ * o.im_;
    HPReal i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

HPComplex& HPComplex::operator/=(const HPComplex& o) {
    HPReal den = o.re_ * o.re_ + o.im_ * o.im_;
    HPReal r = (re_ * o.re_ + im_ * o.im_) / den;
    HPReal i = (im_ * o.re_ - re_ * o.im_) / den;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

HPComplex& HPComplex::operator*=(const HPReal& s) {
    re_ *= s;
    im_ *= s;
    return *this;
}

HPComplex& HPComplex::operator/=(const HPReal& s) {
    re_ /= s;
    im_ /= s;
    return *this;
}

std::string HPComplex::str(int sig) const {
    return re_.str(sig) + (im_.sign() < 0 ? "" : "+") + im_.str(sig) + "i";
}

HPComplex conj(const HPComplex& z) { return {z.re(), -z.im()}; }

HPReal abs(const HPComplex& z) { return hypot(z.re(), z.im()); }

HPReal arg(const HPComplex& z) { return atan2(z.im(), z.re()); }

HPComplex log(const HPComplex& z) { return {ln(abs(z)), arg(z)}; }

HPComplex exp(const HPComplex& z) {
    HPReal m = exp(z.re());
    HPReal s(z.digits()), c(z.digits());
    sin_cos(s, c, z.im());
    return {m * c, m * s};
}

HPComplex unit_phase(const HPReal& theta) {
    HPReal s(theta.digits()), c(theta.digits());
    sin_cos(s, c, theta);
    return {std::move(c), std::move(s)};
}

}  // namespace lagfib
