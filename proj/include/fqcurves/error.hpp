#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fqc {

enum class ErrorCode {
  InvalidArgument,
  DivisionByZero,
  RadicandMismatch,
  NegativeRadicand,
  PrecisionExhausted,
  NotPrime,
  NotPrimePower,
  TooLarge,
  FieldMismatch,
  SyntaxError,
  NotHomogeneous,
  ZeroPolynomial,
  OddDifference,
  NegativeDifference,
  GenusZero,
  WeilWindowViolation,
  CatalogMiss,
  CatalogConflict,
  ParseError,
  BelowValidityThreshold,
  OrderTooLarge,
  OutOfCube,
  NotSquare,
};

constexpr std::string_view code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::RadicandMismatch: return "RadicandMismatch";
    case ErrorCode::NegativeRadicand: return "NegativeRadicand";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::NotPrimePower: return "NotPrimePower";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::OddDifference: return "OddDifference";
    case ErrorCode::NegativeDifference: return "NegativeDifference";
    case ErrorCode::GenusZero: return "GenusZero";
    case ErrorCode::WeilWindowViolation: return "WeilWindowViolation";
    case ErrorCode::CatalogMiss: return "CatalogMiss";
    case ErrorCode::CatalogConflict: return "CatalogConflict";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::BelowValidityThreshold: return "BelowValidityThreshold";
    case ErrorCode::OrderTooLarge: return "OrderTooLarge";
    case ErrorCode::OutOfCube: return "OutOfCube";
    case ErrorCode::NotSquare: return "NotSquare";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fqc
