#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dsmodp {

enum class ErrorCode {
  NotPrime,
  ModulusMismatch,
  DivisionByZero,
  ZeroInput,
  NonMinimal,
  Inconsistent,
  BadDegrees,
  IsotrivialOrSingular,
  BadCharacteristic,
  NonSquarefree,
  NotPrimePower,
  DegenerateMap,
  IrrationalBranching,
  Wild,
  PadInsufficient,
  NoInfinityFibre,
  BudgetExceeded,
  Syntax,
  ExponentOverflow,
  InvalidArgument,
};

constexpr std::string_view error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotPrime: return "NOT_PRIME";
    case ErrorCode::ModulusMismatch: return "MODULUS_MISMATCH";
    case ErrorCode::DivisionByZero: return "DIVISION_BY_ZERO";
    case ErrorCode::ZeroInput: return "ZERO_INPUT";
    case ErrorCode::NonMinimal: return "NON_MINIMAL";
    case ErrorCode::Inconsistent: return "INCONSISTENT";
    case ErrorCode::BadDegrees: return "BAD_DEGREES";
    case ErrorCode::IsotrivialOrSingular: return "ISOTRIVIAL_OR_SINGULAR";
    case ErrorCode::BadCharacteristic: return "BAD_CHARACTERISTIC";
    case ErrorCode::NonSquarefree: return "NON_SQUAREFREE";
    case ErrorCode::NotPrimePower: return "NOT_PRIME_POWER";
    case ErrorCode::DegenerateMap: return "DEGENERATE_MAP";
    case ErrorCode::IrrationalBranching: return "IRRATIONAL_BRANCHING";
    case ErrorCode::Wild: return "WILD";
    case ErrorCode::PadInsufficient: return "PAD_INSUFFICIENT";
    case ErrorCode::NoInfinityFibre: return "NO_INFINITY_FIBRE";
    case ErrorCode::BudgetExceeded: return "BUDGET_EXCEEDED";
    case ErrorCode::Syntax: return "SYNTAX";
    case ErrorCode::ExponentOverflow: return "EXPONENT_OVERFLOW";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
  }
  return "UNKNOWN";
}

/// Every failure in the library is reported through this type; `code()`
/// identifies the contract that was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failures additionally carry the byte offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t offset, const std::string& what)
      : Error(code, what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace dsmodp
