#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "lagfib/hpreal.hpp"
#include "lagfib/precision.hpp"

namespace lagfib {

// Series argument n, carried either exactly or through ln n.  For inputs
// like 2^1000 the logarithmic form is the canonical one; when both forms
// are present they agree to working precision.
class LargeArgument {
  public:
    static LargeArgument from_u64(std::uint64_t n, int digits);
    static LargeArgument from_bigint(const mpz_class& n, int digits);
    static LargeArgument from_ln(HPReal ln_n);
    // Accepts "123", "10^9", "2^1000".
    static LargeArgument parse(std::string_view expr, int digits);

    // ln n; negative infinity for n = 0.
    const HPReal& ln_value() const { return ln_n_; }
    const std::optional<mpz_class>& exact() const { return exact_; }
    bool is_zero() const { return exact_ && *exact_ == 0; }

    // Argument scaled by k (n -> k n).
    LargeArgument times(unsigned k) const;

    std::string describe() const;

  private:
    std::optional<mpz_class> exact_;
    HPReal ln_n_{HPReal::kMinDigits};
};

// ln of the j-th series term:  j ln n - ln j! - C(j,2) ln k.
// ln j! switches from a memoized exact product to the Stirling series with
// Bernoulli corrections above j = 2048.
HPReal term_ln(unsigned k, const LargeArgument& n, long j,
               const PrecisionContext& ctx);

// Index maximizing term_ln; solved from the term-ratio condition and then
// confirmed by a local scan (ties resolve to the smaller index).
long peak_index(unsigned k, const LargeArgument& n, const PrecisionContext& ctx);

// ln sum_j n^j / (k^C(j,2) j!), summed outward from the peak in log space;
// usable far beyond any fixed-exponent range (n = 2^1000 and beyond).
HPReal ln_S(unsigned k, const LargeArgument& n, const PrecisionContext& ctx);

// b_k(n) = S_k(kn)/S_k(n) * ln n / n, n >= 2.
HPReal mahler_b(unsigned k, const LargeArgument& n, const PrecisionContext& ctx);

}  // namespace lagfib
