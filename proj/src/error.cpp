#include "spinstat/error.hpp"

namespace spinstat {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::ModeMismatch: return "mode_mismatch";
        case ErrorCode::ShapeMismatch: return "shape_mismatch";
        case ErrorCode::NotPermutable: return "not_permutable";
        case ErrorCode::SizeLimit: return "size_limit";
        case ErrorCode::InvalidArgument: return "invalid_argument";
        case ErrorCode::InexactSum: return "inexact_sum";
        case ErrorCode::Overflow: return "overflow";
        case ErrorCode::UnknownTag: return "unknown_tag";
        case ErrorCode::UndefinedConditional: return "undefined_conditional";
        case ErrorCode::InsufficientSample: return "insufficient_sample";
        case ErrorCode::Capacity: return "capacity";
        case ErrorCode::NotNormalized: return "not_normalized";
        case ErrorCode::Parse: return "parse_error";
    }
    return "unknown";
}

}  // namespace spinstat
