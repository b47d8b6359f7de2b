#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lagfib {

// Exit-code conventions used by the CLI: 0 ok, 2 resource refusal,
// 3 domain error, 4 internal invariant violation.

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Argument inside (or too close to) a pole of the evaluated function.
struct PoleError : DomainError {
    using DomainError::DomainError;
};

// The engine refuses to start a computation whose window would not fit
// the configured budget.  `required` and `budget` are in bytes.
struct MemoryBudgetExceeded : std::runtime_error {
    MemoryBudgetExceeded(std::uint64_t required_, std::uint64_t budget_)
        : std::runtime_error("memory budget exceeded: need ~" +
                             std::to_string(required_) + " bytes, budget " +
                             std::to_string(budget_) + " bytes"),
          required(required_),
          budget(budget_) {}
    std::uint64_t required;
    std::uint64_t budget;
};

struct InconsistentResidues : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InsufficientSampling : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CheckpointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace lagfib
