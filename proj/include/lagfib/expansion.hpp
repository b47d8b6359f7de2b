#pragma once

#include "lagfib/hpreal.hpp"

namespace lagfib {

// Value of a truncated asymptotic expansion.  `order` tags the highest
// retained group (eta power for the series expansions, 0 elsewhere);
// `error_scale` is the magnitude scale of the first dropped term, for
// envelope tests -- not a hard bound, since the O-constants are unknown.
struct ExpansionResult {
    HPReal value;
    int order = 0;
    HPReal error_scale;
};

}  // namespace lagfib
