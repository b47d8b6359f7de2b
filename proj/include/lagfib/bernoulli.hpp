#pragma once

#include <gmpxx.h>

namespace lagfib {

// Exact Bernoulli number B_n (B_1 = -1/2 convention).  Values are computed
// once via the defining recurrence and cached; thread-safe.
mpq_class bernoulli(unsigned n);

}  // namespace lagfib
