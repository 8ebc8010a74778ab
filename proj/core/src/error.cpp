#include "podseg/error.hpp"

namespace podseg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NonMonotonic: return "NonMonotonic";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::WindowTooLarge: return "WindowTooLarge";
    case ErrorCode::BadScore: return "BadScore";
    case ErrorCode::DuplicateRow: return "DuplicateRow";
    case ErrorCode::MissingScores: return "MissingScores";
    case ErrorCode::DegenerateVariance: return "DegenerateVariance";
    case ErrorCode::ServiceUnavailable: return "ServiceUnavailable";
    case ErrorCode::EmptyTitle: return "EmptyTitle";
    case ErrorCode::BadResponse: return "BadResponse";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace podseg
