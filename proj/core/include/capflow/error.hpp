#pragma once

#include <stdexcept>
#include <string>

namespace capflow {

enum class ErrorCode {
    InvalidArgument,
    EmptyRegion,
    Unreachable,
    MissingDirection,
    SourceTouchesBoundary,
    BudgetExceeded,
    NotACycle,
    Overflow,
};

const char* to_string(ErrorCode code) noexcept;

/// Exception carrying one of the library's named failure modes.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace capflow
