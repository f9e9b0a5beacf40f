#include "qsi/jinv.hpp"

#include "qsi/error.hpp"

namespace qsi {

BranchQuartic branch_quartic(const BiForm& f) {
  if (f.d1() != 2 || f.d2() != 2) throw Error(ErrorKind::DimensionMismatch, "branch quartic needs a (2,2) form");
  if (f.is_zero()) throw Error(ErrorKind::ZeroForm, "zero form has no branch quartic");
  const PrimeField& F = f.field();
  // F_k(X) has coefficients f(i, k), i = power of X1
  auto part = [&](int k) { return std::array<Residue, 3>{f.coeff(0, k), f.coeff(1, k), f.coeff(2, k)}; };
  const auto f0 = part(0), f1 = part(1), f2 = part(2);
  BranchQuartic g{F, {0, 0, 0, 0, 0}};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const Residue sq = F.mul(f1[static_cast<std::size_t>(a)], f1[static_cast<std::size_t>(b)]);
      const Residue cross = F.mul(4, F.mul(f0[static_cast<std::size_t>(a)], f2[static_cast<std::size_t>(b)]));
      auto& slot = g.q[static_cast<std::size_t>(a + b)];
      slot = F.add(slot, F.sub(sq, cross));
    }
  return g;
}

QuarticInvariants invariants(const BranchQuartic& g) {
  const PrimeField& F = g.field;
  const auto [q0, q1, q2, q3, q4] = g.q;
  auto frac = [&](Residue v, std::uint64_t d) { return F.div(v, F.reduce(d)); };
  const Residue s = F.add(F.sub(F.mul(q0, q4), frac(F.mul(q1, q3), 4)), frac(F.mul(q2, q2), 12));
  Residue t = frac(F.mul(q0, F.mul(q2, q4)), 6);
  t = F.add(t, frac(F.mul(q1, F.mul(q2, q3)), 48));
  t = F.sub(t, frac(F.mul(q2, F.mul(q2, q2)), 216));
  t = F.sub(t, frac(F.mul(q0, F.mul(q3, q3)), 16));
  t = F.sub(t, frac(F.mul(F.mul(q1, q1), q4), 16));
  return {s, t};
}

Residue discriminant_expression(const BranchQuartic& g) {
  const PrimeField& F = g.field;
  const auto [s, t] = invariants(g);
  return F.sub(F.pow(s, 3), F.mul(27, F.mul(t, t)));
}

Fq j_invariant(const BranchQuartic& g) {
  const PrimeField& F = g.field;
  const auto [s, t] = invariants(g);
  const Residue s3 = F.pow(s, 3);
  const Residue den = F.sub(s3, F.mul(27, F.mul(t, t)));
  if (den == 0) throw Error(ErrorKind::SingularCurve, "S^3 - 27 T^2 vanishes");
  return Fq(F, F.div(s3, den));
}

Fq j_invariant(const BiForm& f) { return j_invariant(branch_quartic(f)); }

}  // namespace qsi
