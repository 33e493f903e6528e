#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace superpos {

enum class InputErrorCode {
  Schema,
  DuplicateId,
  MalformedRational,
  FloatingPointValue,
  DimensionMismatch,
  MissingCoordinates,
  MissingTableEntry,
  UnknownPoint,
  EmptyConfiguration,
  InvalidWitness,
  InvalidArgument,
  OracleCapExceeded,
};

inline std::string_view to_string(InputErrorCode code) {
  switch (code) {
    case InputErrorCode::Schema: return "schema";
    case InputErrorCode::DuplicateId: return "duplicate-id";
    case InputErrorCode::MalformedRational: return "malformed-rational";
    case InputErrorCode::FloatingPointValue: return "floating-point-value";
    case InputErrorCode::DimensionMismatch: return "dimension-mismatch";
    case InputErrorCode::MissingCoordinates: return "missing-coordinates";
    case InputErrorCode::MissingTableEntry: return "missing-table-entry";
    case InputErrorCode::UnknownPoint: return "unknown-point";
    case InputErrorCode::EmptyConfiguration: return "empty-configuration";
    case InputErrorCode::InvalidWitness: return "invalid-witness";
    case InputErrorCode::InvalidArgument: return "invalid-argument";
    case InputErrorCode::OracleCapExceeded: return "oracle-cap-exceeded";
  }
  return "unknown";
}

// Bad user input: malformed files, inconsistent witnesses, out-of-range
// parameters. The CLI maps these to exit code 1.
class InputError : public std::runtime_error {
 public:
  InputError(InputErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  [[nodiscard]] InputErrorCode code() const noexcept { return code_; }

 private:
  InputErrorCode code_;
};

// An internal consistency check failed (a bug, not bad input). Exit code 2.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace superpos
