#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qf {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kOddDimension,
  kFileNotFound,
  kMalformedHeader,
  kTruncatedData,
  kUnsupportedFormat,
  kWriteFailed,
  kParseError,
  kValidation,
  kDegenerateTrainingSet,
  kVersionMismatch,
  kCorrupted,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries a code so callers can branch
/// on the kind of failure without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qf
