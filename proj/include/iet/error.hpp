#pragma once

#include <stdexcept>
#include <string>

namespace iet {

enum class ErrorCode {
    ContextMismatch,
    AmbiguousSign,
    AlreadyInSpan,
    NotRepresentable,
    ZeroVector,
    NotAntisymmetric,
    NonPositiveLength,
    InvalidPermutation,
    OutOfDomain,
    DomainMismatch,
    ZeroScalar,
    NotInKX,
    NotInG1,
    CapExceeded,
    NotCellAligned,
    InvalidContext,
    InvalidInterval,
    SyntaxError,
    SchemaError,
    InvariantViolation,
    InternalAssertion,
};

const char* error_code_name(ErrorCode code);

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Exact postconditions are checked in release builds too.
#define IET_ENSURE(cond, msg)                                                     \
    do {                                                                          \
        if (!(cond)) throw ::iet::Error(::iet::ErrorCode::InternalAssertion, msg); \
    } while (0)

}  // namespace iet
