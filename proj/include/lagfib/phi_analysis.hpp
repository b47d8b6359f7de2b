#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "lagfib/debruijn.hpp"
#include "lagfib/exact_engine.hpp"
#include "lagfib/expansion.hpp"
#include "lagfib/mahler_series.hpp"
#include "lagfib/precision.hpp"

namespace lagfib {

// One sample of phi_k(n) = ln a_k(n) - ln S_k(n) at the phase coordinate
// x = log_k(n / log_k n).
struct PhiSample {
    std::uint64_t n = 0;
    HPReal x{HPReal::kMinDigits};
    HPReal phi{HPReal::kMinDigits};
};

enum class ExtremumKind { minimum, maximum };

// Result of the three-parameter least-squares fit  mu0 + mu1 x^mu2.
struct ExtremaFit {
    HPReal mu0{HPReal::kMinDigits};
    HPReal mu1{HPReal::kMinDigits};
    HPReal mu2{HPReal::kMinDigits};
    HPReal residual{HPReal::kMinDigits};  // rms of fit errors
    ExtremumKind kind = ExtremumKind::minimum;
    bool degenerate = false;  // mu2 unidentifiable; linear fallback mu2 = -1
};

// Single phi sample through the exact engine.
PhiSample phi(unsigned k, std::uint64_t n, const PrecisionContext& ctx,
              const EngineConfig& cfg = {});

// Asymptotic form of phi: the periodic term at the phase coordinate plus
// the center constant of the requested variant (canonical: derived);
// error_scale = (ln ln n)^2 / ln n.
ExpansionResult phi_asymptotic(unsigned k, const LargeArgument& n,
                               const FourierCoeffTable& table,
                               const PrecisionContext& ctx,
                               CenterVariant variant = CenterVariant::derived);

// Sampling plan: uniform in the phase coordinate, mapped back to integers,
// deduplicated.  per_period counts samples per unit of x.
struct PhiScanPlan {
    std::uint64_t n_min = 1000;
    std::uint64_t n_max = 100000000;  // default cap; long runs raise it
    int per_period = 64;
};

// Sample indices for the plan (strictly increasing).
std::vector<std::uint64_t> phi_sample_indices(unsigned k, const PhiScanPlan& plan);

// One pass of the recurrence (residue storage) computing phi at every
// planned index.  ln S evaluations run in parallel after the pass.
std::vector<PhiSample> scan_phi(unsigned k, const PhiScanPlan& plan,
                                const PrecisionContext& ctx,
                                const EngineConfig& cfg = {});

// Strict local extrema by three-point comparison, refined through the
// parabola over the neighboring samples; enforces an alternating
// min/max sequence (the weaker of two same-kind neighbors is dropped).
// Throws InsufficientSampling when a detected half-period carries fewer
// than three samples.
std::vector<std::pair<PhiSample, ExtremumKind>> find_extrema(
    std::span<const PhiSample> samples);

// Profiled least squares: golden-section search over mu2 on [-6, -0.1]
// with the closed-form linear solve for (mu0, mu1) inside.
ExtremaFit fit_power_law(std::span<const std::pair<double, double>> points,
                         ExtremumKind kind);

}  // namespace lagfib
