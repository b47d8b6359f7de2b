#include "lagfib/exact_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif
#ifdef __linux__
#include <sys/mman.h>
#endif

#include "lagfib/errors.hpp"

namespace lagfib {

U64Buf::U64Buf(std::size_t n) : n_(n) {
    if (n_ == 0) return;
#ifdef __linux__
    void* m = ::mmap(nullptr, n_ * sizeof(std::uint64_t),
                     PROT_READ | PROT_WRITE,
                     MAP_PRIVATE | MAP_ANONYMOUS | MAP_POPULATE, -1, 0);
    if (m != MAP_FAILED) {
        p_ = static_cast<std::uint64_t*>(m);
        mapped_ = true;
        return;
    }
#endif
    p_ = new std::uint64_t[n_];
}

U64Buf::U64Buf(U64Buf&& o) noexcept : p_(o.p_), n_(o.n_), mapped_(o.mapped_) {
    o.p_ = nullptr;
    o.n_ = 0;
}

U64Buf& U64Buf::operator=(U64Buf&& o) noexcept {
    if (this != &o) {
        release();
        p_ = o.p_;
        n_ = o.n_;
        mapped_ = o.mapped_;
        o.p_ = nullptr;
        o.n_ = 0;
    }
    return *this;
}

U64Buf::~U64Buf() { release(); }

void U64Buf::release() {
    if (!p_) return;
#ifdef __linux__
    if (mapped_) {
        ::munmap(p_, n_ * sizeof(std::uint64_t));
        p_ = nullptr;
        return;
    }
#endif
    delete[] p_;
    p_ = nullptr;
}

namespace {
constexpr std::uint64_t kDefaultBudget = 3ull * 1024 * 1024 * 1024 + 512ull * 1024 * 1024;

void check_k(unsigned k) {
    if (k < 2) throw DomainError("k must be >= 2");
}
}  // namespace

std::uint64_t resolve_memory_budget(const EngineConfig& cfg) {
    if (cfg.memory_budget) return cfg.memory_budget;
    if (const char* env = std::getenv("LAGFIB_MEMORY_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return kDefaultBudget;
}

double ln_a_upper_estimate(unsigned k, std::uint64_t n) {
    check_k(k);
    if (n < 64) {
        // Tiny windows; a crude cap good enough for planning.
        return 3.0 + 1.1 * static_cast<double>(n) / k;
    }
    const double lnk = std::log(static_cast<double>(k));
    const double llk = std::log(lnk);
    const double L = std::log(static_cast<double>(n));
    const double LL = std::log(L);
    double v = (L - LL) * (L - LL) / (2 * lnk) +
               (0.5 + 1 / lnk + llk / lnk) * L - (1 + llk / lnk) * LL +
               (1 + llk / (2 * lnk)) * llk - 0.5 * std::log(2 * M_PI);
    // The exact value sits below the smooth part for moderate n (the
    // correction term is negative); pad for the periodic part and slop.
    return v + 2.0;
}

std::vector<std::uint64_t> plan_moduli(unsigned k, std::uint64_t n) {
    check_k(k);
    // product > 2 * a (reconstruction) with a 4x margin on the estimate.
    const double bits_needed = ln_a_upper_estimate(k, n) / std::log(2.0) + 3 + 8;
    const std::size_t count =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(bits_needed / 61.0)));
    std::vector<std::uint64_t> primes;
    mpz_class p = (mpz_class(1) << 61);
    for (std::size_t i = 0; i < count; ++i) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        primes.push_back(p.get_ui());
    }
    return primes;
}

std::uint64_t SequenceWindow::estimate_bytes(unsigned k, std::uint64_t target,
                                             std::size_t n_moduli) {
    check_k(k);
    const std::uint64_t w = target / k + 2;
    if (n_moduli > 0) return w * 8 * n_moduli + (1u << 20);
    // Exact mode: assume every stored value as large as the top one.
    const double bits = std::max(64.0, ln_a_upper_estimate(k, target / k + 1) / std::log(2.0));
    const std::uint64_t per = static_cast<std::uint64_t>(bits / 8) + 48;
    return w * per + (1u << 20);
}

SequenceWindow SequenceWindow::exact_mode(unsigned k, std::uint64_t target,
                                          const EngineConfig& cfg) {
    check_k(k);
    const std::uint64_t need = estimate_bytes(k, target, 0);
    const std::uint64_t budget = resolve_memory_budget(cfg);
    if (need > budget) throw MemoryBudgetExceeded(need, budget);
    SequenceWindow w;
    w.k_ = k;
    w.target_ = target;
    w.window_ = (target + k - 1) / k;
    w.cfg_ = cfg;
    w.init_storage();
    return w;
}

SequenceWindow SequenceWindow::residue_mode(unsigned k, std::uint64_t target,
                                            std::vector<std::uint64_t> moduli,
                                            const EngineConfig& cfg) {
    check_k(k);
    if (moduli.empty()) moduli = plan_moduli(k, target);
    const std::uint64_t need = estimate_bytes(k, target, moduli.size());
    const std::uint64_t budget = resolve_memory_budget(cfg);
    if (need > budget) throw MemoryBudgetExceeded(need, budget);
    SequenceWindow w;
    w.k_ = k;
    w.target_ = target;
    w.window_ = (target + k - 1) / k;
    w.cfg_ = cfg;
    w.moduli_ = std::move(moduli);
    w.init_storage();
    return w;
}

void SequenceWindow::init_storage() {
    if (moduli_.empty()) {
        values_.assign(window_ + 1, BigCount(0));
        values_[0] = 1;
        cur_exact_ = 1;
        pref_exact_ = 0;
    } else {
        cur_.assign(moduli_.size(), 0);
        pref_.assign(moduli_.size(), 0);
        // Uninitialized beyond index 0: entry j is written at step j, and
        // only read from step k*j onward.
        rowdata_ = U64Buf(moduli_.size() * (window_ + 1));
        for (std::size_t c = 0; c < moduli_.size(); ++c) {
            row(c)[0] = 1 % moduli_[c];
            cur_[c] = 1 % moduli_[c];
        }
    }
    pos_ = 0;
}

// One residue channel over [from+1, to]; records the channel residue at the
// requested sample indices.  Channels never touch shared mutable state, so
// the parallel schedule is observably identical to the serial one.
void SequenceWindow::advance_channel(std::size_t c, std::uint64_t from,
                                     std::uint64_t to,
                                     std::span<const std::uint64_t> samples,
                                     std::span<std::uint64_t> sample_out) {
    const std::uint64_t m = moduli_[c];
    std::uint64_t* row = this->row(c);
    std::uint64_t cur = cur_[c];
    std::uint64_t pref = pref_[c];
    const unsigned k = k_;
    const std::uint64_t w = window_;
    std::size_t si = 0;
    while (si < samples.size() && samples[si] <= from) ++si;

    for (std::uint64_t j = from + 1; j <= to; ++j) {
        pref += cur;
        if (pref >= m) pref -= m;
        cur += row[j / k];
        if (cur >= m) cur -= m;
        if (j <= w) row[j] = cur;
        if (si < samples.size() && j == samples[si]) {
            sample_out[si] = cur;
            ++si;
        }
    }
    cur_[c] = cur;
    pref_[c] = pref;
}

void SequenceWindow::run_range(
    std::uint64_t to, std::span<const std::uint64_t> samples,
    const std::function<void(std::uint64_t, const BigCount&)>* sink) {
    if (to > target_)
        throw DomainError("SequenceWindow: advance beyond the window target");
    if (to <= pos_) return;

    if (moduli_.empty()) {
        std::size_t si = 0;
        while (si < samples.size() && samples[si] <= pos_) ++si;
        for (std::uint64_t j = pos_ + 1; j <= to; ++j) {
            pref_exact_ += cur_exact_;
            cur_exact_ += values_[j / k_];
            if (j <= window_) values_[j] = cur_exact_;
            if (si < samples.size() && j == samples[si]) {
                if (sink) (*sink)(j, cur_exact_);
                ++si;
            }
        }
        pos_ = to;
        return;
    }

    const std::size_t nch = moduli_.size();
    std::vector<std::vector<std::uint64_t>> captured(
        nch, std::vector<std::uint64_t>(samples.size(), 0));
    const std::uint64_t from = pos_;
#ifdef _OPENMP
    if (cfg_.parallel) {
        #pragma omp parallel for schedule(static)
        for (std::size_t c = 0; c < nch; ++c)
            advance_channel(c, from, to, samples, captured[c]);
    } else
#endif
    {
        for (std::size_t c = 0; c < nch; ++c)
            advance_channel(c, from, to, samples, captured[c]);
    }
    pos_ = to;

    if (sink) {
        std::vector<std::uint64_t> res(nch);
        for (std::size_t s = 0; s < samples.size(); ++s) {
            if (samples[s] <= from) continue;
            for (std::size_t c = 0; c < nch; ++c) res[c] = captured[c][s];
            (*sink)(samples[s], crt_reconstruct(res, moduli_));
        }
    }
}

void SequenceWindow::maybe_checkpoint() const {
    if (!cfg_.checkpoint_path.empty()) save(cfg_.checkpoint_path);
}

void SequenceWindow::advance_to(std::uint64_t n) {
    if (cfg_.checkpoint_every == 0 || cfg_.checkpoint_path.empty()) {
        run_range(n, {}, nullptr);
        return;
    }
    while (pos_ < n) {
        const std::uint64_t next = std::min(n, pos_ + cfg_.checkpoint_every);
        run_range(next, {}, nullptr);
        maybe_checkpoint();
    }
}

void SequenceWindow::advance_with_samples(
    std::uint64_t n, std::span<const std::uint64_t> samples,
    const std::function<void(std::uint64_t, const BigCount&)>& sink) {
    run_range(n, samples, &sink);
}

BigCount SequenceWindow::current_value() const {
    if (moduli_.empty()) return cur_exact_;
    return crt_reconstruct(cur_, moduli_);
}

BigCount SequenceWindow::prefix_sum_value() const {
    if (moduli_.empty()) return pref_exact_;
    return crt_reconstruct(pref_, moduli_);
}

BigCount SequenceWindow::value_at_kn() const {
    // a_k(k n) = a_k(n) + k * sum_{j<n} a_k(j)
    if (moduli_.empty()) return cur_exact_ + k_ * pref_exact_;
    // Reconstruct the combination channel-wise so the identity also holds
    // when only residues are kept.
    std::vector<std::uint64_t> combo(moduli_.size());
    for (std::size_t c = 0; c < moduli_.size(); ++c) {
        const std::uint64_t m = moduli_[c];
        unsigned __int128 v = static_cast<unsigned __int128>(pref_[c]) * (k_ % m);
        v += cur_[c];
        combo[c] = static_cast<std::uint64_t>(v % m);
    }
    return crt_reconstruct(combo, moduli_);
}

BigCount compute_a(unsigned k, std::uint64_t n, const EngineConfig& cfg) {
    auto w = SequenceWindow::exact_mode(k, n, cfg);
    w.advance_to(n);
    return w.current_value();
}

ResidueResult compute_a_mod(unsigned k, std::uint64_t n,
                            std::span<const std::uint64_t> moduli,
                            const EngineConfig& cfg) {
    for (std::size_t i = 0; i < moduli.size(); ++i)
        for (std::size_t j = i + 1; j < moduli.size(); ++j)
            if (std::gcd(moduli[i], moduli[j]) != 1)
                throw DomainError("compute_a_mod: moduli must be pairwise coprime");
    auto w = SequenceWindow::residue_mode(
        k, n, std::vector<std::uint64_t>(moduli.begin(), moduli.end()), cfg);
    w.advance_to(n);
    return {w.current_residues(), w.prefix_residues()};
}

BigCount crt_reconstruct(std::span<const std::uint64_t> residues,
                         std::span<const std::uint64_t> moduli) {
    if (residues.size() != moduli.size() || moduli.empty())
        throw DomainError("crt_reconstruct: size mismatch");
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        if (residues[i] >= moduli[i])
            throw InconsistentResidues("crt_reconstruct: residue not reduced");
        for (std::size_t j = i + 1; j < moduli.size(); ++j) {
            const std::uint64_t g = std::gcd(moduli[i], moduli[j]);
            if (g != 1 && residues[i] % g != residues[j] % g)
                throw InconsistentResidues("crt_reconstruct: residues disagree mod gcd");
        }
    }
    mpz_class prod = 1;
    for (auto m : moduli) prod *= mpz_class(static_cast<unsigned long>(m));
    mpz_class x = 0;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        mpz_class mi(static_cast<unsigned long>(moduli[i]));
        mpz_class big = prod / mi;
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), big.get_mpz_t(), mi.get_mpz_t()) == 0)
            throw InconsistentResidues("crt_reconstruct: moduli share a factor");
        x += mpz_class(static_cast<unsigned long>(residues[i])) * big % prod * inv;
        x %= prod;
    }
    return x;
}

BigCount a_at_kn(unsigned k, std::uint64_t n, SequenceWindow& window) {
    if (window.k() != k) throw DomainError("a_at_kn: window built for another k");
    if (window.position() < n) window.advance_to(n);
    if (window.position() != n)
        throw DomainError("a_at_kn: window already past the requested index");
    return window.value_at_kn();
}

HPReal ratio_c(unsigned k, std::uint64_t n, const PrecisionContext& ctx,
               const EngineConfig& cfg) {
    if (n < 2) throw DomainError("ratio_c: requires n >= 2");
    auto w = SequenceWindow::exact_mode(k, n, cfg);
    w.advance_to(n);
    const int d = ctx.digits + 10;
    HPReal num = HPReal::from_bigint(w.value_at_kn(), d);
    HPReal den = HPReal::from_bigint(w.current_value(), d);
    HPReal nn(static_cast<long>(n), d);
    HPReal v = num / den * ln(nn) / nn;
    HPReal out(ctx.digits);
    mpfr_set(out.raw(), v.raw(), MPFR_RNDN);
    return out;
}

HPReal ln_a(unsigned k, std::uint64_t n, const PrecisionContext& ctx,
            const EngineConfig& cfg) {
    BigCount a = compute_a(k, n, cfg);
    const int d = ctx.digits + 10;
    HPReal v = ln(HPReal::from_bigint(a, d));
    HPReal out(ctx.digits);
    mpfr_set(out.raw(), v.raw(), MPFR_RNDN);
    return out;
}

}  // namespace lagfib
