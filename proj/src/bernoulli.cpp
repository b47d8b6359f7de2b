#include "lagfib/bernoulli.hpp"

#include <mutex>
#include <vector>

namespace lagfib {

namespace {

std::mutex g_mutex;
std::vector<mpq_class> g_cache;  // g_cache[n] = B_n

// Extend the cache through index n using
//   sum_{j=0}^{m} C(m+1, j) B_j = 0   (m >= 1),
// which gives B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j.
void extend(unsigned n) {
    if (g_cache.empty()) {
        g_cache.emplace_back(1);            // B_0
        g_cache.emplace_back(-1, 2);        // B_1
    }
    while (g_cache.size() <= n) {
        const unsigned m = static_cast<unsigned>(g_cache.size());
        if (m % 2 == 1) {
            g_cache.emplace_back(0);
            continue;
        }
        mpz_class binom = 1;  // C(m+1, 0)
        mpq_class acc = 0;
        for (unsigned j = 0; j < m; ++j) {
            acc += mpq_class(binom) * g_cache[j];
            binom *= (m + 1 - j);
            binom /= (j + 1);
        }
        mpq_class b = -acc / mpq_class(m + 1);
        b.canonicalize();
        g_cache.push_back(std::move(b));
    }
}

}  // namespace

mpq_class bernoulli(unsigned n) {
    std::lock_guard<std::mutex> lock(g_mutex);
    extend(n);
    return g_cache[n];
}

}  // namespace lagfib
