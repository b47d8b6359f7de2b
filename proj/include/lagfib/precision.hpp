#pragma once

#include <algorithm>

namespace lagfib {

// Working-precision contract shared by all high-precision evaluations.
//
// `digits` is the number of decimal digits the caller wants to trust in a
// result; operations work internally at digits + guard and round once.
// The two tolerances bound series truncation: `fourier_cutoff_tail` caps
// the neglected Fourier tail of the periodic fluctuation, and
// `series_tail_tol` caps the neglected tail of the partition series.  The
// effective series tail is tightened to 10^-(digits+5) when that is
// smaller, so that escalating `digits` always tightens the result.
struct PrecisionContext {
    int digits = 60;
    double fourier_cutoff_tail = 1e-30;
    double series_tail_tol = 1e-40;

    static constexpr int kMinDigits = 15;

    PrecisionContext() = default;
    explicit PrecisionContext(int d) : digits(std::max(d, kMinDigits)) {}

    PrecisionContext with_digits(int d) const {
        PrecisionContext c = *this;
        c.digits = std::max(d, kMinDigits);
        return c;
    }
};

}  // namespace lagfib
