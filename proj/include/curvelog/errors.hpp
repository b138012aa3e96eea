#pragma once
// Error taxonomy.
//
// Every failure the library can signal is an Error carrying a stable,
// machine-readable code (tests and the CLI exit-code mapping key off the
// code) together with a human-readable message.  Parse errors additionally
// carry a position and the set of tokens that would have been accepted.

#include <stdexcept>
#include <string>

namespace curvelog {

enum class ErrorCode {
  // exact arithmetic / towers
  DivisionByZero,
  NonSquarefreeMinpoly,
  DegreeTooLow,
  // polynomials and series
  ZeroPolynomial,
  NotAUnit,
  RootNotInField,
  OrderViolation,
  // germ validation
  NotThroughOrigin,
  DivisorComponent,
  NonReduced,
  NonReducedInput,
  // groebner
  InfiniteColength,
  // invariant cross-checks
  IdentityViolation,
  // CLI parser
  SyntaxError,
  UnknownVariable,
  // resource caps
  ResolutionCapExceeded,
  TruncationCapExceeded,
  // should-not-happen
  Internal,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NonSquarefreeMinpoly: return "NonSquarefreeMinpoly";
    case ErrorCode::DegreeTooLow: return "DegreeTooLow";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::RootNotInField: return "RootNotInField";
    case ErrorCode::OrderViolation: return "OrderViolation";
    case ErrorCode::NotThroughOrigin: return "NotThroughOrigin";
    case ErrorCode::DivisorComponent: return "DivisorComponent";
    case ErrorCode::NonReduced: return "NonReduced";
    case ErrorCode::NonReducedInput: return "NonReducedInput";
    case ErrorCode::InfiniteColength: return "InfiniteColength";
    case ErrorCode::IdentityViolation: return "IdentityViolation";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::ResolutionCapExceeded: return "ResolutionCapExceeded";
    case ErrorCode::TruncationCapExceeded: return "TruncationCapExceeded";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Parse failure: position is a 0-based byte offset into the input text.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, const std::string& message, std::size_t position,
             std::string expected)
      : Error(code, message + " at position " + std::to_string(position) +
                        (expected.empty() ? "" : " (expected " + expected + ")")),
        position_(position),
        expected_(std::move(expected)) {}
  std::size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

}  // namespace curvelog
