#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace genecon {

enum class ErrorCode {
  InvalidMatrix,
  InvalidGrid,
  GridTooSmall,
  NotUnitVector,
  RankDeficientSubspace,
  DimensionMismatch,
  SingularPhenotypicCovariance,
  UnbalancedDesign,
  InsufficientData,
  InvalidCovariance,
  InvalidArgument,
  Io,
  Parse,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures surface as this exception; `code()` lets callers
// branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  /// Message without the error-code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace genecon
