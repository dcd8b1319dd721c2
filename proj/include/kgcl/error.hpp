/// @file error.hpp
/// @brief Error type shared by every kgcl module.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kgcl {

enum class ErrorCode {
    parse_error,
    unrenderable_change,
    invalid_change,
    format_error,
    duplicate_node_id,
    duplicate_edge,
    not_found,
    ambiguous,
    mismatch,
    already_exists,
    missing_target,
    ambiguous_edge,
    unknown_change_type,
    missing_field,
    unexpected_field,
    tabular_unrepresentable,
    bad_header,
    io_error,
};

constexpr auto to_string_view(ErrorCode code) noexcept -> std::string_view {
    switch (code) {
        case ErrorCode::parse_error:             return "ParseError";
        case ErrorCode::unrenderable_change:     return "UnrenderableChange";
        case ErrorCode::invalid_change:          return "InvalidChange";
        case ErrorCode::format_error:            return "FormatError";
        case ErrorCode::duplicate_node_id:       return "DuplicateNodeId";
        case ErrorCode::duplicate_edge:          return "DuplicateEdge";
        case ErrorCode::not_found:               return "NotFound";
        case ErrorCode::ambiguous:               return "Ambiguous";
        case ErrorCode::mismatch:                return "MismatchError";
        case ErrorCode::already_exists:          return "AlreadyExists";
        case ErrorCode::missing_target:          return "MissingTarget";
        case ErrorCode::ambiguous_edge:          return "AmbiguousEdge";
        case ErrorCode::unknown_change_type:     return "UnknownChangeType";
        case ErrorCode::missing_field:           return "MissingField";
        case ErrorCode::unexpected_field:        return "UnexpectedField";
        case ErrorCode::tabular_unrepresentable: return "TabularUnrepresentable";
        case ErrorCode::bad_header:              return "BadHeader";
        case ErrorCode::io_error:                return "IoError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), m_code(code) {}

    [[nodiscard]] auto code() const noexcept -> ErrorCode { return m_code; }

private:
    ErrorCode m_code;
};

}  // namespace kgcl
