#pragma once

#include <stdexcept>
#include <string>

namespace pdechunk {

/// Zero pivot encountered during tridiagonal elimination.
struct SingularSystemError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// max|u|*dt/dx exceeded 1 for the upwind scheme.
struct CflViolationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operands have different grid shapes.
struct ShapeMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// File manifest is unreadable or internally inconsistent.
struct MalformedHeaderError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// File ends before the payload length promised by the manifest.
struct TruncatedPayloadError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Payload CRC-32 does not match the manifest.
struct ChecksumMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Chunk runs do not partition the expected time indices.
struct MalformedRunError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Measured interval is below timer resolution; rerun with more repetitions.
struct TimerResolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace pdechunk
