#include "gseq/error.hpp"

namespace gseq {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::RepresentationOverflow: return "RepresentationOverflow";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::Syntax: return "SyntaxError";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::ThresholdViolation: return "ThresholdViolation";
    case ErrorCode::Unrepresentable: return "Unrepresentable";
    case ErrorCode::D6Violation: return "D6Violation";
    case ErrorCode::LimitUnresolved: return "LimitUnresolved";
    case ErrorCode::NotShort: return "NotShort";
    case ErrorCode::KappaMismatch: return "KappaMismatch";
    case ErrorCode::BadLift: return "BadLift";
    case ErrorCode::Crashed: return "Crashed";
    case ErrorCode::Validation: return "ValidationError";
    case ErrorCode::Io: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string message, std::string symbol)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      message_(message),
      code_(code),
      symbol_(std::move(symbol)) {}

ParseError::ParseError(ErrorCode code, std::string message, std::size_t position,
                       std::string symbol)
    : Error(code, message + " at position " + std::to_string(position), std::move(symbol)),
      position_(position) {
  message_ = std::move(message);
}

}  // namespace gseq
