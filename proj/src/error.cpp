#include "qsi/error.hpp"

namespace qsi {

std::string_view token(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ModulusMismatch: return "ModulusMismatch";
    case ErrorKind::InvalidModulus: return "InvalidModulus";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::ZeroForm: return "ZeroForm";
    case ErrorKind::DegenerateChoice: return "DegenerateChoice";
    case ErrorKind::NoComponent: return "NoComponent";
    case ErrorKind::Ambiguous: return "Ambiguous";
    case ErrorKind::SingularCurve: return "SingularCurve";
    case ErrorKind::RandomnessExhausted: return "RandomnessExhausted";
    case ErrorKind::RetriesExhausted: return "RetriesExhausted";
    case ErrorKind::InvalidParameters: return "InvalidParameters";
    case ErrorKind::FactorizationFailed: return "FactorizationFailed";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DegenerateChoice:
    case ErrorKind::NoComponent:
    case ErrorKind::Ambiguous:
    case ErrorKind::SingularCurve:
    case ErrorKind::RandomnessExhausted:
    case ErrorKind::RetriesExhausted:
    case ErrorKind::RankDeficient:
    case ErrorKind::FactorizationFailed:
      return 2;
    case ErrorKind::InvalidModulus:
    case ErrorKind::InvalidParameters:
    case ErrorKind::MalformedInput:
      return 3;
    default:
      return 4;
  }
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(token(kind)) + ": " + what), kind_(kind) {}

}  // namespace qsi
