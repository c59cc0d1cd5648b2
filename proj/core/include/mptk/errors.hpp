#pragma once

#include <stdexcept>
#include <string>

namespace mptk {

/// Failure categories surfaced by the library.  Every precondition violation
/// throws Error with one of these codes so callers (and tests) can match on
/// the cause without parsing messages.
enum class ErrorCode {
  NotSquare,
  NotHermitian,
  NonFinite,
  ShapeError,
  NotOrthonormal,
  NotInvariant,
  RankMismatch,
  RankCollapse,
  CountMismatch,
  ParseError,
  SymmetryViolation,
  InvalidArgument,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mptk
