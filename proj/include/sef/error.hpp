#pragma once

#include <stdexcept>
#include <string>

namespace sef {

enum class ErrorKind {
    InvalidData,        // non-finite or otherwise unusable numeric input
    InvalidParameter,   // out-of-range hyper-parameter or size request
    DimensionMismatch,
    InvalidLabels,
    InvalidMask,
    MissingModel,       // class-pair decision model not available
    DegenerateKernel,   // eigenvalue too small to renormalize a KPCA direction
    DisconnectedGraph,
    NumericFailure,     // a numeric guarantee did not hold (e.g. gradient check)
    IoError,
    FormatError,        // unreadable or wrong-version file
    UsageError,         // bad command-line invocation
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

const char* error_kind_name(ErrorKind kind);

} // namespace sef
