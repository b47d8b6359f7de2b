// Throughput of the residue-channel recurrence: serial reference vs the
// OpenMP channel-parallel path, with a result-equality check, plus the exact
// big-integer path at a smaller size for scale.

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lagfib/exact_engine.hpp"

using namespace lagfib;

namespace {

double now_s() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

double run_residue(unsigned k, std::uint64_t n, bool parallel,
                   BigCount* value_out) {
    EngineConfig cfg;
    cfg.parallel = parallel;
    auto w = SequenceWindow::residue_mode(k, n, {}, cfg);
    const double t0 = now_s();
    w.advance_to(n);
    const double dt = now_s() - t0;
    *value_out = w.value_at_kn();
    return dt;
}

}  // namespace

int main(int argc, char** argv) {
    unsigned k = 2;
    std::uint64_t n = 20000000;
    if (argc > 1) k = static_cast<unsigned>(std::strtoul(argv[1], nullptr, 10));
    if (argc > 2) n = std::strtoull(argv[2], nullptr, 10);

    const auto moduli = plan_moduli(k, n);
    std::printf("k=%u n=%" PRIu64 "  channels=%zu\n", k, n, moduli.size());
#ifdef _OPENMP
    std::printf("openmp: %d thread(s)\n", omp_get_max_threads());
#else
    std::printf("openmp: disabled at build time\n");
#endif

    BigCount serial_v, parallel_v;
    const double ts = run_residue(k, n, false, &serial_v);
    std::printf("serial   : %8.3f s  (%.1f Msteps/s per channel)\n", ts,
                n / ts / 1e6);
    const double tp = run_residue(k, n, true, &parallel_v);
    std::printf("parallel : %8.3f s  (%.1f Msteps/s per channel)  speedup %.2fx\n",
                tp, n / tp / 1e6, ts / tp);

    if (serial_v != parallel_v) {
        std::printf("MISMATCH between serial and parallel results\n");
        return 1;
    }
    std::printf("serial/parallel results identical\n");

    // Exact path cross-check at a size where it is cheap.
    const std::uint64_t n_small = std::min<std::uint64_t>(n, 200000);
    EngineConfig cfg;
    auto we = SequenceWindow::exact_mode(k, n_small, cfg);
    const double t0 = now_s();
    we.advance_to(n_small);
    const double te = now_s() - t0;
    auto wr = SequenceWindow::residue_mode(k, n_small, {}, cfg);
    wr.advance_to(n_small);
    if (we.current_value() != wr.current_value()) {
        std::printf("MISMATCH between exact and residue results at n=%" PRIu64 "\n",
                    n_small);
        return 1;
    }
    std::printf("exact    : %8.3f s for n=%" PRIu64 " (big-integer reference, matches residues)\n",
                te, n_small);
    return 0;
}
