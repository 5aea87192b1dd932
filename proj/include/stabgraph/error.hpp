#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stabgraph {

/// Stable error identifiers. The name of each enumerator is what appears in
/// error messages (`error[Name]: ...`), so renaming one is a breaking change.
enum class Errc {
  DivisionByZero,
  NotDivisible,
  VariableMismatch,
  ZeroPolynomial,
  DegreeOverflow,
  ZeroDenominator,
  ParseError,
  InvalidT,
  DuplicateEdge,
  LoopEdge,
  IndexOutOfRange,
  UnsupportedLongForm,
  PreconditionViolated,
  TooLarge,
  DegeneratePencil,
  NotRealCoefficients,
  DegreeTooSmall,
  MinusOneInput,
  ZeroB,
  UnsupportedTarget,
  NoBoundaryZero,
  DegenerateR2,
  ZeroPairing,
  OddContactOrder,
  FitUnstable,
  IoError,
  Internal,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::NotDivisible: return "NotDivisible";
    case Errc::VariableMismatch: return "VariableMismatch";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::DegreeOverflow: return "DegreeOverflow";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidT: return "InvalidT";
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::LoopEdge: return "LoopEdge";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::UnsupportedLongForm: return "UnsupportedLongForm";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::TooLarge: return "TooLarge";
    case Errc::DegeneratePencil: return "DegeneratePencil";
    case Errc::NotRealCoefficients: return "NotRealCoefficients";
    case Errc::DegreeTooSmall: return "DegreeTooSmall";
    case Errc::MinusOneInput: return "MinusOneInput";
    case Errc::ZeroB: return "ZeroB";
    case Errc::UnsupportedTarget: return "UnsupportedTarget";
    case Errc::NoBoundaryZero: return "NoBoundaryZero";
    case Errc::DegenerateR2: return "DegenerateR2";
    case Errc::ZeroPairing: return "ZeroPairing";
    case Errc::OddContactOrder: return "OddContactOrder";
    case Errc::FitUnstable: return "FitUnstable";
    case Errc::IoError: return "IoError";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error("error[" + std::string(errc_name(code)) + "]: " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace stabgraph
