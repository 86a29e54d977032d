#include "opengrid/error.hpp"

namespace opengrid {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::NonNumericVoltage: return "NonNumericVoltage";
    case ErrorCode::NonNumericValue: return "NonNumericValue";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::InvalidGeometry: return "InvalidGeometry";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::OverlappingAreas: return "OverlappingAreas";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::ConstantVector: return "ConstantVector";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::SolverStall: return "SolverStall";
    case ErrorCode::NetworkError: return "NetworkError";
    case ErrorCode::HashMismatch: return "HashMismatch";
    case ErrorCode::Io: return "Io";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

bool Error::is_validation() const noexcept {
  switch (code_) {
    case ErrorCode::SolverStall:
    case ErrorCode::NetworkError:
    case ErrorCode::Io:
      return false;
    default:
      return true;
  }
}

}  // namespace opengrid
