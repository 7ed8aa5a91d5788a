#include "capflow/error.hpp"

namespace capflow {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::EmptyRegion: return "EmptyRegion";
        case ErrorCode::Unreachable: return "Unreachable";
        case ErrorCode::MissingDirection: return "MissingDirection";
        case ErrorCode::SourceTouchesBoundary: return "SourceTouchesBoundary";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::NotACycle: return "NotACycle";
        case ErrorCode::Overflow: return "Overflow";
    }
    return "Unknown";
}

}  // namespace capflow
