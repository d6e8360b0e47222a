#include "genecon/error.hpp"

namespace genecon {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::NotUnitVector: return "NotUnitVector";
    case ErrorCode::RankDeficientSubspace: return "RankDeficientSubspace";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularPhenotypicCovariance: return "SingularPhenotypicCovariance";
    case ErrorCode::UnbalancedDesign: return "UnbalancedDesign";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::InvalidCovariance: return "InvalidCovariance";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(message) {}

}  // namespace genecon
