#pragma once

#include <stdexcept>
#include <string>

namespace mhl {

// Failure taxonomy shared by all modules. Argument-shaped problems derive
// from invalid_argument, state/environment problems from runtime_error, so
// the CLI can map them onto distinct exit codes.

struct LengthMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ArityMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidArgs : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DegreeMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ResourceLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A context construction produced data violating its own direct-sum
// invariant. Never downgraded to a warning: the projection built from a bad
// complement would silently change what is being verified.
struct DecompositionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Resource guards for basis enumeration and row generation.
struct Limits {
    std::uint64_t max_cols = 1ull << 22;
    std::uint64_t max_rows = 1ull << 24;
};

}  // namespace mhl
