#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace etacoh {

/// Failure categories raised by the library. The CLI prints `error_name()`
/// verbatim, so the enumerator spelling is part of the external interface.
enum class ErrorCode {
  DivisionByZero,
  UnsupportedGroup,
  NotASubgroupMap,
  NotIrreducible,
  NotFree,
  OddLength,
  NotFixedPointFree,
  NonRationalSum,
  NotVirtualDimensionZero,
  GroupMismatch,
  DegreeBoundExceeded,
  NonConfluentPresentation,
  InconsistentSteenrodData,
  DegeneratePairing,
  ParseError,
  ValidationError,
  InvalidArgument,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

/// Parse failure carrying a 1-based line and column.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(ErrorCode::ParseError, message + " (line " + std::to_string(line) +
                                         ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace etacoh
