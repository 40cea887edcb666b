#pragma once

#include <stdexcept>
#include <string>

namespace softqed {

// Numeric values are mirrored by sq_status in softqed.h; keep them in sync.
enum class ErrorCode : int {
    InvalidArgument = 1,
    SingularMatrix = 2,
    DegeneratePoles = 3,
    QuadratureTolerance = 4,
    OnShellCrossing = 5,
    StepTooSmall = 6,
    FitFailure = 7,
    SoftCollinear = 8,
    TruncationInsufficient = 9,
    NonConvergent = 10,
    InvalidLoop = 11,
    ConfigParse = 12,
    Io = 13,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace softqed
