#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace podseg {

enum class ErrorCode {
  InvalidArgument,
  EmptyInput,
  TooShort,
  DegenerateInput,
  FormatError,
  ParseError,
  UnsupportedFormat,
  OutOfRange,
  NonMonotonic,
  LengthMismatch,
  WindowTooLarge,
  BadScore,
  DuplicateRow,
  MissingScores,
  DegenerateVariance,
  ServiceUnavailable,
  EmptyTitle,
  BadResponse,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace podseg
