#ifndef CHSYS_ERRORS_HPP
#define CHSYS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace chsys {

// Base class for all solver errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad scenario/config input (CLI exit code 2).
struct ConfigError : Error {
    using Error::Error;
};

// Non-finite values appeared during time stepping (CLI exit code 3).
struct BlowUpError : Error {
    using Error::Error;
};

// A hard invariant was violated (CLI exit code 4).
struct InvariantError : Error {
    using Error::Error;
};

// State fields are structurally inconsistent (NaN/Inf, size mismatch).
struct MalformedStateError : Error {
    using Error::Error;
};

// Grid does not cover the range required by a transform.
struct CoverageError : Error {
    using Error::Error;
};

// Operation is outside the supported parameter regime.
struct UnsupportedError : Error {
    using Error::Error;
};

} // namespace chsys

#endif
