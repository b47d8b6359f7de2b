#include "lagfib/phi_analysis.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lagfib/errors.hpp"

namespace lagfib {

namespace {

constexpr int kGuard = 15;

HPReal round_to(const HPReal& v, int digits) {
    HPReal out(digits);
    mpfr_set(out.raw(), v.raw(), MPFR_RNDN);
    return out;
}

// Phase coordinate x = log_k(n / log_k n) = (ln n - ln ln n + ln ln k)/ln k.
HPReal phase_x(unsigned k, const HPReal& ln_n, int d) {
    HPReal lnk = const_ln(k, d);
    return (ln_n - ln(ln_n) + ln(lnk)) / lnk;
}

double phase_x_d(unsigned k, double n) {
    const double lnk = std::log(static_cast<double>(k));
    const double L = std::log(n);
    return (L - std::log(L) + std::log(lnk)) / lnk;
}

// Inverse of the phase map: n with log_k(n / log_k n) = x.
double phase_x_inv(unsigned k, double x) {
    const double lnk = std::log(static_cast<double>(k));
    double n = std::pow(k, x) * std::max(1.0, x);
    for (int i = 0; i < 60; ++i) n = std::pow(k, x) * (std::log(n) / lnk);
    return n;
}

}  // namespace

PhiSample phi(unsigned k, std::uint64_t n, const PrecisionContext& ctx,
              const EngineConfig& cfg) {
    if (ctx.digits < 30) throw DomainError("phi: context must carry >= 30 digits");
    const int d = ctx.digits + kGuard;
    BigCount a = compute_a(k, n, cfg);
    HPReal la = ln(HPReal::from_bigint(a, d));
    LargeArgument arg = LargeArgument::from_u64(n, d);
    HPReal ls = ln_S(k, arg, ctx.with_digits(d));
    PhiSample s;
    s.n = n;
    s.x = round_to(phase_x(k, arg.ln_value(), d), ctx.digits);
    s.phi = round_to(la - ls, ctx.digits);
    return s;
}

ExpansionResult phi_asymptotic(unsigned k, const LargeArgument& n,
                               const FourierCoeffTable& table,
                               const PrecisionContext& ctx,
                               CenterVariant variant) {
    const int d = ctx.digits + kGuard;
    HPReal L(d);
    mpfr_set(L.raw(), n.ln_value().raw(), MPFR_RNDN);
    if (!(L > 0.0)) throw DomainError("phi_asymptotic: requires n > 1");
    HPReal LL = ln(L);

    PhiCenterConstants cc = phi_center_constant(k, ctx.with_digits(d));
    const HPReal* center = &cc.derived;
    if (variant == CenterVariant::printed_plus) center = &cc.printed_plus;
    if (variant == CenterVariant::printed_minus) center = &cc.printed_minus;

    // The periodic term oscillates around alpha_0, which is already inside
    // the center constant; add only the oscillating part.
    HPReal x = phase_x(k, L, d);
    HPReal osc = psi(table, x, ctx.with_digits(d)) - table.coeffs[0].re();
    return {round_to(*center + osc, ctx.digits), 0,
            round_to(LL * LL / L, ctx.digits)};
}

std::vector<std::uint64_t> phi_sample_indices(unsigned k, const PhiScanPlan& plan) {
    if (plan.n_min < k * 2ull || plan.n_max <= plan.n_min)
        throw DomainError("phi_sample_indices: need 2k <= n_min < n_max");
    if (plan.per_period < 2)
        throw DomainError("phi_sample_indices: need >= 2 samples per period");
    const double x_lo = phase_x_d(k, static_cast<double>(plan.n_min));
    const double x_hi = phase_x_d(k, static_cast<double>(plan.n_max));
    std::vector<std::uint64_t> out;
    const double step = 1.0 / plan.per_period;
    for (double x = x_lo; x <= x_hi + 1e-12; x += step) {
        const double nf = phase_x_inv(k, x);
        auto n = static_cast<std::uint64_t>(std::llround(nf));
        n = std::clamp<std::uint64_t>(n, plan.n_min, plan.n_max);
        if (out.empty() || n > out.back()) out.push_back(n);
    }
    return out;
}

std::vector<PhiSample> scan_phi(unsigned k, const PhiScanPlan& plan,
                                const PrecisionContext& ctx,
                                const EngineConfig& cfg) {
    if (ctx.digits < 30)
        throw DomainError("scan_phi: context must carry >= 30 digits");
    const int d = ctx.digits + kGuard;
    const std::vector<std::uint64_t> idx = phi_sample_indices(k, plan);

    // Pass 1: one streaming run of the recurrence, exact values at samples.
    std::vector<HPReal> ln_as;
    ln_as.reserve(idx.size());
    auto w = SequenceWindow::residue_mode(k, plan.n_max, {}, cfg);
    w.advance_with_samples(plan.n_max, idx,
                           [&](std::uint64_t, const BigCount& a) {
                               ln_as.push_back(ln(HPReal::from_bigint(a, d)));
                           });
    if (ln_as.size() != idx.size())
        throw InternalError("scan_phi: sample count mismatch");

    // Pass 2: series values, trivially parallel across samples.
    std::vector<PhiSample> out(idx.size());
    PrecisionContext work = ctx.with_digits(d);
    std::exception_ptr err;
#ifdef _OPENMP
    #pragma omp parallel for schedule(dynamic, 8) if (cfg.parallel)
#endif
    for (std::size_t i = 0; i < idx.size(); ++i) {
        try {
            LargeArgument arg = LargeArgument::from_u64(idx[i], d);
            HPReal ls = ln_S(k, arg, work);
            out[i].n = idx[i];
            out[i].x = round_to(phase_x(k, arg.ln_value(), d), ctx.digits);
            out[i].phi = round_to(ln_as[i] - ls, ctx.digits);
        } catch (...) {
#ifdef _OPENMP
            #pragma omp critical
#endif
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return out;
}

std::vector<std::pair<PhiSample, ExtremumKind>> find_extrema(
    std::span<const PhiSample> samples) {
    if (samples.size() < 3)
        throw InsufficientSampling("find_extrema: need at least 3 samples");

    struct Hit {
        PhiSample s;
        ExtremumKind kind;
        std::size_t i;
    };
    std::vector<Hit> hits;
    for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
        const double ym = samples[i - 1].phi.to_double();
        const double y0 = samples[i].phi.to_double();
        const double yp = samples[i + 1].phi.to_double();
        ExtremumKind kind;
        if (y0 > ym && y0 > yp) {
            kind = ExtremumKind::maximum;
        } else if (y0 < ym && y0 < yp) {
            kind = ExtremumKind::minimum;
        } else {
            continue;
        }
        // Parabola through the three neighbors; vertex refines both the
        // location and the value (grid granularity would otherwise dominate
        // the 1e-6-scale measurement).
        const double xm = samples[i - 1].x.to_double();
        const double x0 = samples[i].x.to_double();
        const double xp = samples[i + 1].x.to_double();
        PhiSample refined = samples[i];
        const double denom = (xm - x0) * (xm - xp) * (x0 - xp);
        if (denom != 0.0) {
            const double A =
                (xp * (y0 - ym) + x0 * (ym - yp) + xm * (yp - y0)) / denom;
            const double B = (xp * xp * (ym - y0) + x0 * x0 * (yp - ym) +
                              xm * xm * (y0 - yp)) /
                             denom;
            const double C = (x0 * xp * (x0 - xp) * ym +
                              xp * xm * (xp - xm) * y0 +
                              xm * x0 * (xm - x0) * yp) /
                             denom;
            if (A != 0.0) {
                const double xv = -B / (2 * A);
                if (xv > xm && xv < xp) {
                    refined.x = HPReal(xv, samples[i].x.digits());
                    refined.phi =
                        HPReal((A * xv + B) * xv + C, samples[i].phi.digits());
                }
            }
        }
        hits.push_back({refined, kind, i});
    }

    // Enforce alternation: equal-kind neighbors are sampling noise; keep the
    // stronger one.
    std::vector<Hit> kept;
    for (auto& h : hits) {
        if (!kept.empty() && kept.back().kind == h.kind) {
            const double a = kept.back().s.phi.to_double();
            const double b = h.s.phi.to_double();
            const bool replace =
                (h.kind == ExtremumKind::maximum) ? (b > a) : (b < a);
            if (replace) kept.back() = h;
            continue;
        }
        kept.push_back(h);
    }

    // Sampling adequacy: at least 3 grid points per detected half-period.
    for (std::size_t i = 1; i < kept.size(); ++i) {
        if (kept[i].i - kept[i - 1].i < 3)
            throw InsufficientSampling(
                "find_extrema: fewer than 3 samples per half-period");
    }

    std::vector<std::pair<PhiSample, ExtremumKind>> out;
    out.reserve(kept.size());
    for (auto& h : kept) out.emplace_back(h.s, h.kind);
    return out;
}

namespace {

// SSE of the best (mu0, mu1) for fixed mu2, with the fitted pair out.
double profile_sse(std::span<const std::pair<double, double>> pts, double mu2,
                   double* mu0_out, double* mu1_out) {
    // Linear regression on basis {1, x^mu2}.
    double s1 = 0, sb = 0, sbb = 0, sy = 0, sby = 0;
    for (auto& [x, y] : pts) {
        const double b = std::pow(x, mu2);
        s1 += 1;
        sb += b;
        sbb += b * b;
        sy += y;
        sby += b * y;
    }
    const double det = s1 * sbb - sb * sb;
    double mu0, mu1;
    if (std::abs(det) < 1e-300 * (s1 * sbb + 1)) {
        mu0 = sy / s1;
        mu1 = 0;
    } else {
        mu1 = (s1 * sby - sb * sy) / det;
        mu0 = (sy - mu1 * sb) / s1;
    }
    double sse = 0;
    for (auto& [x, y] : pts) {
        const double r = y - mu0 - mu1 * std::pow(x, mu2);
        sse += r * r;
    }
    if (mu0_out) *mu0_out = mu0;
    if (mu1_out) *mu1_out = mu1;
    return sse;
}

}  // namespace

ExtremaFit fit_power_law(std::span<const std::pair<double, double>> points,
                         ExtremumKind kind) {
    if (points.size() < 4)
        throw DomainError("fit_power_law: need at least 4 points");
    for (auto& [x, y] : points)
        if (!(x > 0)) throw DomainError("fit_power_law: abscissae must be positive");

    ExtremaFit fit;
    fit.kind = kind;

    // Exactly constant ordinates leave mu2 unidentifiable.
    const double y0 = points[0].second;
    bool constant = true;
    for (auto& [x, y] : points)
        if (y != y0) {
            constant = false;
            break;
        }
    if (constant) {
        fit.degenerate = true;
        fit.mu0 = HPReal(y0, 20);
        fit.mu1 = HPReal(0.0, 20);
        fit.mu2 = HPReal(-1.0, 20);
        fit.residual = HPReal(0.0, 20);
        return fit;
    }

    // Coarse scan over the bracket, then golden-section inside the best cell.
    const double lo = -6.0, hi = -0.1;
    const int cells = 118;
    double best_mu2 = lo, best_sse = profile_sse(points, lo, nullptr, nullptr);
    for (int i = 1; i <= cells; ++i) {
        const double m = lo + (hi - lo) * i / cells;
        const double s = profile_sse(points, m, nullptr, nullptr);
        if (s < best_sse) {
            best_sse = s;
            best_mu2 = m;
        }
    }
    double a = std::max(lo, best_mu2 - (hi - lo) / cells);
    double b = std::min(hi, best_mu2 + (hi - lo) / cells);
    const double gr = (std::sqrt(5.0) - 1) / 2;
    double c = b - gr * (b - a), dd = a + gr * (b - a);
    double fc = profile_sse(points, c, nullptr, nullptr);
    double fd = profile_sse(points, dd, nullptr, nullptr);
    for (int it = 0; it < 200 && (b - a) > 1e-13; ++it) {
        if (fc < fd) {
            b = dd;
            dd = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = profile_sse(points, c, nullptr, nullptr);
        } else {
            a = c;
            c = dd;
            fc = fd;
            dd = a + gr * (b - a);
            fd = profile_sse(points, dd, nullptr, nullptr);
        }
    }
    const double mu2 = 0.5 * (a + b);
    double mu0 = 0, mu1 = 0;
    const double sse = profile_sse(points, mu2, &mu0, &mu1);

    fit.mu0 = HPReal(mu0, 20);
    fit.mu1 = HPReal(mu1, 20);
    fit.mu2 = HPReal(mu2, 20);
    fit.residual = HPReal(std::sqrt(sse / points.size()), 20);
    return fit;
}

}  // namespace lagfib
