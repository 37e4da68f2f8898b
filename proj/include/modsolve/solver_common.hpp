#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace modsolve {

// Shared solver knobs. `audit` re-derives and checks every combination identity the
// recursion relies on (costs extra time, used by tests). `max_quotient` overrides the
// per-solver cap on quotient size; solvers whose work grows exponentially in the
// quotient refuse larger nodes instead of stalling.
struct SolveOptions {
    bool audit = false;
    std::optional<int> max_quotient;
};

struct quotient_limit_error : std::runtime_error {
    quotient_limit_error(const std::string& solver, int size, int limit)
        : std::runtime_error(solver + ": quotient with " + std::to_string(size) +
                             " blocks exceeds the size guard " + std::to_string(limit) +
                             " (override with max_quotient)"),
          quotient_size(size),
          guard(limit) {}
    int quotient_size;
    int guard;
};

namespace detail {

inline void check_quotient(const char* solver, int size, int fallback,
                           const SolveOptions& opts) {
    int limit = opts.max_quotient.value_or(fallback);
    if (size > limit) throw quotient_limit_error(solver, size, limit);
}

inline void audit_check(bool ok, const char* what) {
    if (!ok) throw std::logic_error(std::string("audit failure: ") + what);
}

}  // namespace detail
}  // namespace modsolve
