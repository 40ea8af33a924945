#pragma once

#include <stdexcept>
#include <string>

namespace forge {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user input (CLI exit code 3).
struct ConfigError : Error {
    using Error::Error;
};

// A resource cap was hit: closure too large, eigensolver over cutoff (exit code 4).
struct CapError : Error {
    using Error::Error;
};

// A mathematical consistency assertion failed; indicates a bug, not bad input.
struct InternalError : Error {
    using Error::Error;
};

inline void internal_check(bool ok, const std::string& what) {
    if (!ok) throw InternalError("internal consistency violated: " + what);
}

}  // namespace forge
