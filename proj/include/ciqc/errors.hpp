#pragma once

#include <stdexcept>
#include <string>

namespace ciqc {

// Input outside the supported family (exceptional, non-Fano, bad ranges).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal oracle disagreed with a computed value.
struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A checked identity failed.
struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mismatched caps, malformed files, bad flags.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ciqc
