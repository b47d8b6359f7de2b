// Command-line front end: exact values, ratio/series tables, figure data.

#include <CLI11.hpp>

#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "lagfib/debruijn.hpp"
#include "lagfib/errors.hpp"
#include "lagfib/exact_engine.hpp"
#include "lagfib/mahler_series.hpp"
#include "lagfib/phi_analysis.hpp"
#include "lagfib/saddle_expansion.hpp"
#include "lagfib/table_io.hpp"

namespace {

using namespace lagfib;

constexpr std::uint64_t kDefaultNCap = 100000000ull;  // raised by --long-run

struct CommonOpts {
    int digits = 60;
    std::string out;
    std::string format = "csv";
    std::uint64_t memory_budget = 0;
    bool serial = false;
    bool long_run = false;
};

EngineConfig engine_config(const CommonOpts& c) {
    EngineConfig cfg;
    cfg.memory_budget = c.memory_budget;
    cfg.parallel = !c.serial;
    return cfg;
}

void emit(const Table& t, const CommonOpts& c) {
    const TableFormat fmt = parse_format(c.format);
    if (c.out.empty())
        t.write(std::cout, fmt);
    else
        t.write_file(c.out, fmt);
}

std::uint64_t parse_index(const std::string& expr) {
    LargeArgument a = LargeArgument::parse(expr, 30);
    if (!a.exact() || !a.exact()->fits_ulong_p())
        throw DomainError("index too large for the exact engine: " + expr);
    return a.exact()->get_ui();
}

// Budget refusal takes precedence (it reports the estimate); the soft n cap
// applies only to runs the budget would otherwise allow.
void enforce_limits(const CommonOpts& common, unsigned k, std::uint64_t n,
                    std::size_t n_moduli) {
    const std::uint64_t need = SequenceWindow::estimate_bytes(k, n, n_moduli);
    const std::uint64_t budget = resolve_memory_budget(engine_config(common));
    if (need > budget) throw MemoryBudgetExceeded(need, budget);
    if (!common.long_run && n > kDefaultNCap)
        throw DomainError("n exceeds the default cap of 1e8; pass --long-run");
}

int cmd_exact(const CommonOpts& common, const std::string& n_expr,
              unsigned k, const std::vector<std::uint64_t>& moduli,
              const std::string& resume, const std::string& checkpoint,
              std::uint64_t checkpoint_every) {
    const std::uint64_t n = parse_index(n_expr);
    enforce_limits(common, k, n, moduli.empty() ? 0 : moduli.size());
    EngineConfig cfg = engine_config(common);
    cfg.checkpoint_path = checkpoint;
    cfg.checkpoint_every = checkpoint_every;

    if (!moduli.empty()) {
        auto rr = compute_a_mod(k, n, moduli, cfg);
        Table t;
        t.header = {"modulus", "a_mod", "prefix_mod"};
        for (std::size_t i = 0; i < moduli.size(); ++i)
            t.rows.push_back({std::to_string(moduli[i]),
                              std::to_string(rr.residues[i]),
                              std::to_string(rr.prefix_residues[i])});
        emit(t, common);
        return 0;
    }

    BigCount a;
    if (!resume.empty()) {
        auto w = SequenceWindow::load(resume);
        if (w.k() != k) throw DomainError("checkpoint was built for another k");
        if (n > w.target())
            throw DomainError("checkpoint window is smaller than requested n");
        w.advance_to(n);
        if (!checkpoint.empty()) w.save(checkpoint);
        a = w.current_value();
    } else {
        auto w = SequenceWindow::exact_mode(k, n, cfg);
        w.advance_to(n);
        if (!checkpoint.empty()) w.save(checkpoint);
        a = w.current_value();
    }
    std::cout << a.get_str() << "\n";
    return 0;
}

int cmd_table1(const CommonOpts& common, unsigned k, int nmax_exp) {
    if (nmax_exp < 1) throw DomainError("table1: nmax exponent must be >= 1");
    std::uint64_t n_max = 1;
    for (int e = 0; e < nmax_exp; ++e) n_max *= 10;
    enforce_limits(common, k, n_max, 0);

    PrecisionContext ctx(common.digits);
    EngineConfig cfg = engine_config(common);
    const int d = ctx.digits + 10;

    Table t;
    t.header = {"n", "c", "b"};
    auto w = SequenceWindow::exact_mode(k, n_max, cfg);
    std::uint64_t n = 1;
    for (int e = 1; e <= nmax_exp; ++e) {
        n *= 10;
        w.advance_to(n);
        HPReal num = HPReal::from_bigint(w.value_at_kn(), d);
        HPReal den = HPReal::from_bigint(w.current_value(), d);
        HPReal nn(static_cast<long>(n), d);
        HPReal c = num / den * ln(nn) / nn;
        HPReal b = mahler_b(k, LargeArgument::from_u64(n, d), ctx);
        char label[32];
        std::snprintf(label, sizeof label, "%" PRIu64, n);
        t.rows.push_back({label, c.str_fixed(5), b.str_fixed(5)});
    }
    emit(t, common);
    return 0;
}

int cmd_table2(const CommonOpts& common, std::vector<unsigned> ks, int jmax,
               bool with_alpha0) {
    PrecisionContext ctx(common.digits);
    Table t;
    t.header = {"k", "j", "gamma_zeta_abs", "alpha_abs", "conj_residual"};
    for (unsigned k : ks) {
        if (with_alpha0) {
            HPComplex a0 = fourier_alpha(k, 0, ctx);
            t.rows.push_back({std::to_string(k), "0", "", a0.re().str(9), "0"});
        }
        for (int j = 1; j <= jmax; ++j) {
            HPComplex a = fourier_alpha(k, j, ctx);
            HPComplex am = fourier_alpha(k, -j, ctx);
            HPReal resid = abs(am - conj(a));
            t.rows.push_back({std::to_string(k), std::to_string(j),
                              alpha_product_magnitude(k, j, ctx).str(9),
                              abs(a).str(9), resid.str(2)});
        }
    }
    emit(t, common);
    return 0;
}

int cmd_figure_c_curve(const CommonOpts& common, unsigned k,
                       std::uint64_t n_exact_max, int m_max) {
    PrecisionContext ctx(common.digits);
    EngineConfig cfg = engine_config(common);
    const int d = ctx.digits + 10;

    Table t;
    t.header = {"n", "ln_n", "c", "b"};

    // Exact-ratio branch on a half-decade grid.
    std::vector<std::uint64_t> grid;
    for (std::uint64_t base = 10; base <= n_exact_max; base *= 10) {
        grid.push_back(base);
        const std::uint64_t half = base * 316 / 100;
        if (half <= n_exact_max) grid.push_back(half);
    }
    auto w = SequenceWindow::exact_mode(k, n_exact_max, cfg);
    for (std::uint64_t n : grid) {
        w.advance_to(n);
        HPReal num = HPReal::from_bigint(w.value_at_kn(), d);
        HPReal den = HPReal::from_bigint(w.current_value(), d);
        HPReal nn(static_cast<long>(n), d);
        HPReal c = num / den * ln(nn) / nn;
        LargeArgument arg = LargeArgument::from_u64(n, d);
        HPReal b = mahler_b(k, arg, ctx);
        t.rows.push_back({std::to_string(n), arg.ln_value().str(12),
                          c.str_fixed(6), b.str_fixed(6)});
    }

    // Series-only branch bridging to 2^m_max.
    std::vector<int> ms;
    for (int m = 24; m <= m_max; m = std::max(m + 1, m + m / 8)) ms.push_back(m);
    if (ms.empty() || ms.back() != m_max) ms.push_back(m_max);
    for (int m : ms) {
        LargeArgument arg =
            LargeArgument::parse("2^" + std::to_string(m), ctx.digits + 10);
        HPReal b = mahler_b(k, arg, ctx);
        t.rows.push_back({"2^" + std::to_string(m), arg.ln_value().str(12), "",
                          b.str_fixed(6)});
    }
    emit(t, common);
    return 0;
}

int cmd_figure_phi_curve(const CommonOpts& common, unsigned k,
                         std::uint64_t n_min, std::uint64_t n_max,
                         int per_period) {
    PrecisionContext ctx(common.digits);
    enforce_limits(common, k, n_max, plan_moduli(k, n_max).size());
    PhiScanPlan plan{n_min, n_max, per_period};
    auto samples = scan_phi(k, plan, ctx, engine_config(common));
    Table t;
    t.header = {"n", "x", "phi"};
    for (const auto& s : samples)
        t.rows.push_back({std::to_string(s.n), s.x.str(12), s.phi.str(12)});
    emit(t, common);
    return 0;
}

int cmd_figure_extrema(const CommonOpts& common, unsigned k,
                       std::uint64_t n_min, std::uint64_t n_max,
                       int per_period, std::uint64_t fit_n_min) {
    PrecisionContext ctx(common.digits);
    enforce_limits(common, k, n_max, plan_moduli(k, n_max).size());
    PhiScanPlan plan{n_min, n_max, per_period};
    auto samples = scan_phi(k, plan, ctx, engine_config(common));
    auto extrema = find_extrema(samples);

    Table t;
    t.header = {"kind", "x", "n", "phi", "mu0", "mu1", "mu2", "residual"};
    std::vector<std::pair<double, double>> mins, maxs;
    for (const auto& [s, kind] : extrema) {
        const bool is_max = kind == ExtremumKind::maximum;
        t.rows.push_back({is_max ? "max" : "min", s.x.str(12),
                          std::to_string(s.n), s.phi.str(12), "", "", "", ""});
        if (s.n >= fit_n_min)
            (is_max ? maxs : mins).emplace_back(s.x.to_double(),
                                                s.phi.to_double());
    }
    for (auto* branch : {&mins, &maxs}) {
        if (branch->size() < 4) continue;
        ExtremaFit fit = fit_power_law(*branch, branch == &maxs
                                                    ? ExtremumKind::maximum
                                                    : ExtremumKind::minimum);
        t.rows.push_back({branch == &maxs ? "fit_max" : "fit_min", "", "", "",
                          fit.mu0.str(10), fit.mu1.str(10), fit.mu2.str(10),
                          fit.residual.str(4)});
    }
    emit(t, common);
    return 0;
}

int cmd_figure_lnS_eta(const CommonOpts& common, unsigned k, int p_min,
                       int p_max) {
    PrecisionContext ctx(common.digits);
    const int d = ctx.digits + 10;
    Table t;
    t.header = {"eta",      "exact",   "order_m2", "order_m1",
                "order_0",  "order_1", "order_2",  "asymptote"};
    HPReal asym = 1L / (const_ln(k, d) * 2L);
    for (int p = p_min; p <= p_max; ++p) {
        // n = k^p so that eta = 1/p.
        LargeArgument n = LargeArgument::parse(
            std::to_string(k) + "^" + std::to_string(p), d);
        HPReal L(d);
        mpfr_set(L.raw(), n.ln_value().raw(), MPFR_RNDN);
        HPReal L2 = L * L;
        EtaParam ep = EtaParam::of(k, n, ctx);
        std::vector<std::string> row;
        row.push_back(ep.eta.str(10));
        row.push_back((ln_S(k, n, ctx) / L2).str(10));
        for (int order = -2; order <= 2; ++order)
            row.push_back((ln_S_expansion_eta(ep, order, ctx).value / L2).str(10));
        row.push_back(asym.str(10));
        t.rows.push_back(std::move(row));
    }
    emit(t, common);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and asymptotic evaluation of the lagged recurrence "
                 "a(n) = a(n-1) + a(floor(n/k))"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonOpts common;
    app.add_option("--digits", common.digits, "working decimal digits")
        ->capture_default_str();
    app.add_option("--out", common.out, "output file (stdout when absent)");
    app.add_option("--format", common.format, "csv or jsonl")
        ->capture_default_str();
    app.add_option("--memory-budget", common.memory_budget,
                   "memory budget in bytes (or env LAGFIB_MEMORY_BUDGET)");
    app.add_flag("--serial", common.serial, "disable channel parallelism");
    app.add_flag("--long-run", common.long_run,
                 "allow n beyond 1e8 and enable checkpoint use");

    // exact
    auto* sx = app.add_subcommand("exact", "print a_k(n) exactly (or residues)");
    unsigned k_exact = 2;
    std::string n_expr;
    std::vector<std::uint64_t> moduli;
    std::string resume, checkpoint;
    std::uint64_t checkpoint_every = 0;
    sx->add_option("--k", k_exact, "branch factor k >= 2")->capture_default_str();
    sx->add_option("--n", n_expr, "index (supports 10^9, 2^1000)")->required();
    sx->add_option("--mod", moduli, "word-sized prime moduli; prints residues");
    sx->add_option("--resume", resume, "resume from a checkpoint file");
    sx->add_option("--checkpoint-file", checkpoint, "write checkpoint here");
    sx->add_option("--checkpoint-every", checkpoint_every,
                   "steps between periodic checkpoints");

    // table1
    auto* s1 = app.add_subcommand("table1", "n, c_k(n), b_k(n) at powers of ten");
    unsigned k_t1 = 2;
    int nmax_exp = 6;
    s1->add_option("--k", k_t1, "branch factor")->capture_default_str();
    s1->add_option("--nmax-exp", nmax_exp, "largest power of ten")
        ->capture_default_str();

    // table2
    auto* s2 = app.add_subcommand("table2", "Fourier coefficient magnitudes");
    std::vector<unsigned> ks_t2{2, 3};
    int jmax = 4;
    bool with_alpha0 = false;
    s2->add_option("--k", ks_t2, "branch factors")->capture_default_str();
    s2->add_option("--jmax", jmax, "largest index")->capture_default_str();
    s2->add_flag("--with-alpha0", with_alpha0, "include the j = 0 row");

    // figure
    auto* sf = app.add_subcommand("figure", "figure data emitters");
    std::string fig_name;
    unsigned k_fig = 2;
    std::uint64_t n_min = 10000, n_max = kDefaultNCap, n_exact_max = 1000000;
    std::uint64_t fit_n_min = 10000;
    int per_period = 64, m_max = 1000, p_min = 3, p_max = 50;
    sf->add_option("name", fig_name, "c_curve | phi_curve | extrema | lnS_eta")
        ->required();
    sf->add_option("--k", k_fig, "branch factor")->capture_default_str();
    sf->add_option("--n-min", n_min, "smallest sampled n")->capture_default_str();
    sf->add_option("--n-max", n_max, "largest sampled n")->capture_default_str();
    sf->add_option("--n-exact-max", n_exact_max,
                   "largest n for the exact ratio branch")
        ->capture_default_str();
    sf->add_option("--fit-n-min", fit_n_min, "smallest n entering the fits")
        ->capture_default_str();
    sf->add_option("--per-period", per_period, "samples per unit phase")
        ->capture_default_str();
    sf->add_option("--m-max", m_max, "largest exponent of the 2^m bridge")
        ->capture_default_str();
    sf->add_option("--p-min", p_min, "smallest p of the eta = 1/p grid")
        ->capture_default_str();
    sf->add_option("--p-max", p_max, "largest p of the eta = 1/p grid")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sx->parsed())
            return cmd_exact(common, n_expr, k_exact, moduli, resume,
                             checkpoint, checkpoint_every);
        if (s1->parsed()) return cmd_table1(common, k_t1, nmax_exp);
        if (s2->parsed()) return cmd_table2(common, ks_t2, jmax, with_alpha0);
        if (sf->parsed()) {
            if (fig_name == "c_curve")
                return cmd_figure_c_curve(common, k_fig, n_exact_max, m_max);
            if (fig_name == "phi_curve")
                return cmd_figure_phi_curve(common, k_fig, n_min, n_max,
                                            per_period);
            if (fig_name == "extrema")
                return cmd_figure_extrema(common, k_fig, n_min, n_max,
                                          per_period, fit_n_min);
            if (fig_name == "lnS_eta")
                return cmd_figure_lnS_eta(common, k_fig, p_min, p_max);
            throw DomainError("unknown figure: " + fig_name);
        }
    } catch (const MemoryBudgetExceeded& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
