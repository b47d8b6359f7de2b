#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lagfib/hpreal.hpp"
#include "lagfib/precision.hpp"

namespace lagfib {

// Large flat uint64 buffer.  Backed by mmap with MAP_POPULATE so the pages
// are faulted in by one syscall instead of one fault per page (the window
// rows dominate the engine's footprint), falling back to new[] when mmap is
// unavailable.  Contents start uninitialized.
class U64Buf {
  public:
    U64Buf() = default;
    explicit U64Buf(std::size_t n);
    U64Buf(U64Buf&& o) noexcept;
    U64Buf& operator=(U64Buf&& o) noexcept;
    U64Buf(const U64Buf&) = delete;
    U64Buf& operator=(const U64Buf&) = delete;
    ~U64Buf();

    std::uint64_t* data() { return p_; }
    const std::uint64_t* data() const { return p_; }
    std::size_t size() const { return n_; }
    std::uint64_t& operator[](std::size_t i) { return p_[i]; }
    const std::uint64_t& operator[](std::size_t i) const { return p_[i]; }

  private:
    void release();
    std::uint64_t* p_ = nullptr;
    std::size_t n_ = 0;
    bool mapped_ = false;
};

// Exact nonnegative count; strictly positive and nondecreasing along the
// recurrence a_k(n) = a_k(n-1) + a_k(floor(n/k)), a_k(0) = 1.
using BigCount = mpz_class;

struct EngineConfig {
    std::uint64_t memory_budget = 0;  // bytes; 0 -> env or default
    bool parallel = true;             // residue channels under OpenMP
    std::uint64_t checkpoint_every = 0;  // steps between checkpoints; 0 = off
    std::string checkpoint_path;
};

// Budget resolution order: explicit config value, LAGFIB_MEMORY_BUDGET env
// var (bytes), 3.5 GiB default.
std::uint64_t resolve_memory_budget(const EngineConfig& cfg);

// Upper estimate of ln a_k(n) from the leading asymptotics (the exact value
// sits below it for n >= 1000; small n are padded).  Drives the modulus
// planner and the memory estimator.
double ln_a_upper_estimate(unsigned k, std::uint64_t n);

// Primes below 2^62 whose product exceeds a_k(n) by at least the planning
// margin (factor 2 for reconstruction, factor 4 safety on the estimate).
std::vector<std::uint64_t> plan_moduli(unsigned k, std::uint64_t n);

// Streaming state of the recurrence: values for indices 0..ceil(target/k)
// (all later steps only read below that), the current value, and the running
// prefix sum  sum_{j < position} a_k(j).  Storage is either exact integers
// or one row of 64-bit residues per modulus.
class SequenceWindow {
  public:
    static SequenceWindow exact_mode(unsigned k, std::uint64_t target,
                                     const EngineConfig& cfg = {});
    static SequenceWindow residue_mode(unsigned k, std::uint64_t target,
                                       std::vector<std::uint64_t> moduli = {},
                                       const EngineConfig& cfg = {});

    // Estimated peak bytes for a window; n_moduli = 0 means exact mode.
    static std::uint64_t estimate_bytes(unsigned k, std::uint64_t target,
                                        std::size_t n_moduli);

    void advance_to(std::uint64_t n);

    // Advance to n, reconstructing the exact a_k(i) at every index i in the
    // sorted list `samples` (indices <= n) and handing it to `sink`.
    void advance_with_samples(
        std::uint64_t n, std::span<const std::uint64_t> samples,
        const std::function<void(std::uint64_t, const BigCount&)>& sink);

    unsigned k() const { return k_; }
    std::uint64_t target() const { return target_; }
    std::uint64_t position() const { return pos_; }
    bool residue_storage() const { return !moduli_.empty(); }
    const std::vector<std::uint64_t>& moduli() const { return moduli_; }

    // a_k(position), exact (reconstructed through the CRT in residue mode).
    BigCount current_value() const;
    // sum_{j < position} a_k(j), exact.
    BigCount prefix_sum_value() const;
    // a_k(k * position) via the prefix-sum identity; never touches indices
    // beyond the window.
    BigCount value_at_kn() const;

    std::vector<std::uint64_t> current_residues() const { return cur_; }
    std::vector<std::uint64_t> prefix_residues() const { return pref_; }

    void save(std::ostream& os) const;
    void save(const std::string& path) const;
    static SequenceWindow load(std::istream& is);
    static SequenceWindow load(const std::string& path);

  private:
    SequenceWindow() = default;
    void init_storage();
    void advance_channel(std::size_t c, std::uint64_t from, std::uint64_t to,
                         std::span<const std::uint64_t> samples,
                         std::span<std::uint64_t> sample_out);
    void run_range(std::uint64_t to, std::span<const std::uint64_t> samples,
                   const std::function<void(std::uint64_t, const BigCount&)>* sink);
    void maybe_checkpoint() const;

    friend struct CheckpointCodec;

    unsigned k_ = 2;
    std::uint64_t target_ = 0;
    std::uint64_t window_ = 0;  // highest stored index = ceil(target/k)
    std::uint64_t pos_ = 0;
    EngineConfig cfg_;

    // exact storage
    std::vector<BigCount> values_;
    BigCount cur_exact_ = 1;
    BigCount pref_exact_ = 0;

    // residue storage: one contiguous block, one row of window_+1 words per
    // modulus (a single large mapping populates far faster than several).
    std::vector<std::uint64_t> moduli_;
    U64Buf rowdata_;
    std::vector<std::uint64_t> cur_, pref_;

    std::uint64_t* row(std::size_t c) { return rowdata_.data() + c * (window_ + 1); }
    const std::uint64_t* row(std::size_t c) const {
        return rowdata_.data() + c * (window_ + 1);
    }
};

// Exact a_k(n).  Refuses (MemoryBudgetExceeded) rather than thrash when the
// window estimate does not fit the budget.
BigCount compute_a(unsigned k, std::uint64_t n, const EngineConfig& cfg = {});

struct ResidueResult {
    std::vector<std::uint64_t> residues;         // a_k(n) mod m_i
    std::vector<std::uint64_t> prefix_residues;  // (sum_{j<n} a_k(j)) mod m_i
};
ResidueResult compute_a_mod(unsigned k, std::uint64_t n,
                            std::span<const std::uint64_t> moduli,
                            const EngineConfig& cfg = {});

// Unique representative below prod(moduli); the caller guarantees the
// product exceeds twice the true value.  Throws InconsistentResidues when
// residues disagree on a shared factor of non-coprime moduli.
BigCount crt_reconstruct(std::span<const std::uint64_t> residues,
                         std::span<const std::uint64_t> moduli);

// a_k(k n) from a window already advanced to n (advances it when behind).
BigCount a_at_kn(unsigned k, std::uint64_t n, SequenceWindow& window);

// c_k(n) = a_k(kn)/a_k(n) * ln(n)/n, n >= 2.
HPReal ratio_c(unsigned k, std::uint64_t n, const PrecisionContext& ctx,
               const EngineConfig& cfg = {});

// ln a_k(n), absolute error within the context guard.
HPReal ln_a(unsigned k, std::uint64_t n, const PrecisionContext& ctx,
            const EngineConfig& cfg = {});

}  // namespace lagfib
