#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spinstat {

/// Machine-readable failure categories. The CLI serializes these verbatim.
enum class ErrorCode {
    ModeMismatch,
    ShapeMismatch,
    NotPermutable,
    SizeLimit,
    InvalidArgument,
    InexactSum,
    Overflow,
    UnknownTag,
    UndefinedConditional,
    InsufficientSample,
    Capacity,
    NotNormalized,
    Parse,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    std::string_view code_name() const noexcept { return error_code_name(code_); }

private:
    ErrorCode code_;
};

}  // namespace spinstat
