#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace onion {

enum class ErrorCode {
  InvalidInput,      // non-finite coordinates, out-of-range indices
  DegenerateInput,   // too few points, all points collinear
  InvalidParameter,  // bad variances, non-PD covariance, bad config values
  InsufficientData,  // not enough samples for an estimate
  InvalidData,       // data that cannot be transformed (zero variance)
  Precondition,      // caller contract violated (outlier budget >= size)
  Parse,             // malformed file contents
  EmptyDataset,
  Io,
  Internal,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace onion
