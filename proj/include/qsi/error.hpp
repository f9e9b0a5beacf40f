#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qsi {

enum class ErrorKind {
  DivisionByZero,
  ModulusMismatch,
  InvalidModulus,
  DimensionMismatch,
  SingularMatrix,
  ZeroPolynomial,
  ZeroForm,
  DegenerateChoice,
  NoComponent,
  Ambiguous,
  SingularCurve,
  RandomnessExhausted,
  RetriesExhausted,
  InvalidParameters,
  FactorizationFailed,
  RankDeficient,
  MalformedInput,
  InvariantViolation,
};

/// Machine-readable token, e.g. "SingularCurve".
std::string_view token(ErrorKind kind) noexcept;

/// Process exit status for a failure of this kind (2 degeneracy, 3 malformed input, 4 internal).
int exit_code(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qsi
