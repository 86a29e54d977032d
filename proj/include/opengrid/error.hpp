#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace opengrid {

enum class ErrorCode {
  MissingColumn,
  DuplicateId,
  NonNumericVoltage,
  NonNumericValue,
  MalformedRow,
  InvalidGeometry,
  DanglingReference,
  SelfLoop,
  OverlappingAreas,
  ZeroVector,
  ConstantVector,
  LengthMismatch,
  SolverStall,
  NetworkError,
  HashMismatch,
  Io,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

  // Input-data problems (bad files, broken references) as opposed to
  // solver or environment failures. The CLI maps these to exit code 1.
  bool is_validation() const noexcept;

 private:
  ErrorCode code_;
};

}  // namespace opengrid
