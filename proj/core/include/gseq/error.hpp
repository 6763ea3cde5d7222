#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gseq {

enum class ErrorCode {
  RepresentationOverflow,
  Unsupported,
  OutOfDomain,
  Syntax,
  UnknownSymbol,
  ArityMismatch,
  NotClosed,
  ThresholdViolation,
  Unrepresentable,
  D6Violation,
  LimitUnresolved,
  NotShort,
  KappaMismatch,
  BadLift,
  Crashed,
  Validation,
  Io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::string symbol = {});

  ErrorCode code() const noexcept { return code_; }
  const std::string& symbol() const noexcept { return symbol_; }
  // what() without the code prefix (and without the position for ParseError).
  const std::string& message() const noexcept { return message_; }

 protected:
  std::string message_;

 private:
  ErrorCode code_;
  std::string symbol_;
};

// Raised by the formula, ordinal, state and file parsers. `position` is a
// byte offset into the parsed text.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::string message, std::size_t position,
             std::string symbol = {});

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace gseq
