#pragma once

#include <array>

#include "qsi/embeddings.hpp"
#include "qsi/forms.hpp"

namespace qsi {

/// G = q0 X0^4 + q1 X0^3 X1 + q2 X0^2 X1^2 + q3 X0 X1^3 + q4 X1^4.
struct BranchQuartic {
  PrimeField field;
  std::array<Residue, 5> q;
};

/// Writes f = Y0^2 F0 + Y0 Y1 F1 + Y1^2 F2 and returns F1^2 - 4 F0 F2.
/// Throws ZeroForm, or DimensionMismatch unless f has bidegree (2,2).
BranchQuartic branch_quartic(const BiForm& f);

struct QuarticInvariants {
  Residue s;
  Residue t;
};

/// S = q0 q4 - q1 q3 / 4 + q2^2 / 12
/// T = q0 q2 q4 / 6 + q1 q2 q3 / 48 - q2^3 / 216 - q0 q3^2 / 16 - q1^2 q4 / 16
QuarticInvariants invariants(const BranchQuartic& g);

/// S^3 - 27 T^2; zero exactly when the quartic has a repeated root.
Residue discriminant_expression(const BranchQuartic& g);

/// j = S^3 / (S^3 - 27 T^2). Throws SingularCurve when the denominator vanishes.
Fq j_invariant(const BranchQuartic& g);
Fq j_invariant(const BiForm& f);

}  // namespace qsi
