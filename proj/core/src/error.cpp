#include "onion/error.hpp"

namespace onion {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "invalid input";
    case ErrorCode::DegenerateInput: return "degenerate input";
    case ErrorCode::InvalidParameter: return "invalid parameter";
    case ErrorCode::InsufficientData: return "insufficient data";
    case ErrorCode::InvalidData: return "invalid data";
    case ErrorCode::Precondition: return "precondition failed";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::EmptyDataset: return "empty dataset";
    case ErrorCode::Io: return "i/o error";
    case ErrorCode::Internal: return "internal error";
  }
  return "unknown error";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace onion
