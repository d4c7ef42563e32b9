#pragma once

#include <stdexcept>
#include <string>

namespace chevalley {

enum class ErrorCode {
  DuplicateGenerator,
  BadCharacteristic,
  RingMismatch,
  DivisionByZeroPoly,
  ParseError,
  NotMonic,
  AssociativityFailure,
  NotFree,
  NotMonogenic,
  CertificationFailure,
  SolutionSpaceDimensionMismatch,
  InconsistentPin,
  CharTooSmall,
  IncompatiblePair,
  InsufficientPrecision,
  InvalidArgument,
};

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::DuplicateGenerator: return "DuplicateGenerator";
    case ErrorCode::BadCharacteristic: return "BadCharacteristic";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::DivisionByZeroPoly: return "DivisionByZeroPoly";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotMonic: return "NotMonic";
    case ErrorCode::AssociativityFailure: return "AssociativityFailure";
    case ErrorCode::NotFree: return "NotFree";
    case ErrorCode::NotMonogenic: return "NotMonogenic";
    case ErrorCode::CertificationFailure: return "CertificationFailure";
    case ErrorCode::SolutionSpaceDimensionMismatch: return "SolutionSpaceDimensionMismatch";
    case ErrorCode::InconsistentPin: return "InconsistentPin";
    case ErrorCode::CharTooSmall: return "CharTooSmall";
    case ErrorCode::IncompatiblePair: return "IncompatiblePair";
    case ErrorCode::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace chevalley
