#pragma once

// Exception hierarchy shared by the whole library. Soft outcomes (a division
// that fails, a surface that is not invariant, a resonant index that blocks a
// series coefficient) are value-level results near their operations; the types
// below are for contract violations the caller has to fix.

#include <stdexcept>
#include <string>

namespace lv3 {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Arithmetic outside the domain: zero denominators, inverse of zero.
struct MathError : Error {
    using Error::Error;
};

// Two polynomials over different variable lists were combined.
struct RingMismatchError : Error {
    using Error::Error;
};

// Malformed text input (expressions, system files, catalog records).
struct ParseError : Error {
    using Error::Error;
};

// An operation's stated precondition does not hold for the given arguments.
struct PreconditionViolated : Error {
    using Error::Error;
};

// Sampling a case parametrization failed to produce an admissible point.
struct DegenerateSample : Error {
    using Error::Error;
};

// A case label or branch name that the catalog does not contain.
struct UnknownCase : Error {
    using Error::Error;
};

}  // namespace lv3
