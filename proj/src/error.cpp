#include "qf/error.hpp"

namespace qf {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kDimensionMismatch: return "dimension mismatch";
    case ErrorCode::kOddDimension: return "odd dimension";
    case ErrorCode::kFileNotFound: return "file not found";
    case ErrorCode::kMalformedHeader: return "malformed header";
    case ErrorCode::kTruncatedData: return "truncated data";
    case ErrorCode::kUnsupportedFormat: return "unsupported format";
    case ErrorCode::kWriteFailed: return "write failed";
    case ErrorCode::kParseError: return "parse error";
    case ErrorCode::kValidation: return "validation error";
    case ErrorCode::kDegenerateTrainingSet: return "degenerate training set";
    case ErrorCode::kVersionMismatch: return "version mismatch";
    case ErrorCode::kCorrupted: return "corrupted";
  }
  return "unknown";
}

}  // namespace qf
