#pragma once

#include <optional>
#include <vector>

#include "qsi/forms.hpp"
#include "qsi/linalg.hpp"
#include "qsi/poly.hpp"

namespace qsi {

/// Index of the last coordinate of P^N for the degree-m Veronese image of P^3: C(m+3,3) - 1.
inline Index veronese_last_index(int m) { return static_cast<Index>(binomial(static_cast<std::uint64_t>(m + 3), 3)) - 1; }

/// Action of A in GL(n+1) on degree-m monomials in n+1 variables: row e holds the
/// coefficients of prod_i (sum_j a_ij X_j)^(e_i) in the descending-lex monomial basis.
/// It is multiplicative, and glemb(A, m) * v(P) = v(A P) for the Veronese map v.
/// Throws SingularMatrix for non-invertible A.
MatrixFq glemb(const MatrixFq& a, int m);

/// glemb restricted to generalized permutations; the result is again one.
GenPerm glemb(const GenPerm& a, int m);

/// f(g1 X, g2 Y) for 2 x 2 invertible g1, g2 and any bidegree; throws SingularMatrix.
/// In coefficient-matrix form C' = glemb(g1)^T C glemb(g2).
BiForm gl2_transport(const BiForm& f, const MatrixFq& g1, const MatrixFq& g2);

/// v_{3,m}(P) as a column vector.
MatrixFq veronese_point(const PrimeField& field, int m, std::span<const Residue> p);

/// Secret Veronese frame M_U in GL(N+1): the variety is M_U * v_{3,m}(P^3).
class VeroneseFrame {
 public:
  /// Throws SingularMatrix unless `matrix` is invertible of size C(m+3,3).
  VeroneseFrame(MatrixFq matrix, int m);

  static VeroneseFrame identity(const PrimeField& field, int m);
  static VeroneseFrame random(const PrimeField& field, int m, Stream& rng);
  static VeroneseFrame random_generalized_permutation(const PrimeField& field, int m, Stream& rng);

  const MatrixFq& matrix() const noexcept { return matrix_; }
  const MatrixFq& inverse() const noexcept { return inverse_; }
  int m() const noexcept { return m_; }
  const PrimeField& field() const noexcept { return matrix_.field(); }

  /// A point M_U * v(P) of the variety.
  MatrixFq point(std::span<const Residue> p) const;

 private:
  MatrixFq matrix_;
  MatrixFq inverse_;
  int m_;
};

/// (N+1) x (m+1)^2 matrix realizing P^1 x P^1 -> P^N.
class SigmaEmbedding {
 public:
  SigmaEmbedding(MatrixFq matrix, int m);

  const MatrixFq& matrix() const noexcept { return matrix_; }
  int m() const noexcept { return m_; }
  const PrimeField& field() const noexcept { return matrix_.field(); }

  MatrixFq point(Point1 p, Point1 q) const;
  bool has_full_column_rank() const;

 private:
  MatrixFq matrix_;
  int m_;
};

/// frame * glemb(b, m) * E, where E is the expansion matrix. Throws SingularMatrix.
SigmaEmbedding sigma_compose(const VeroneseFrame& frame, const MatrixFq& b);

BiForm pullback(const RowVector& h, const SigmaEmbedding& sigma);

/// Companion matrix of a monic polynomial; its characteristic polynomial is f.
MatrixFq companion_matrix(const UniPoly& f);

/// Monic quartic whose root generates F_{q^4}^*; requires q < 2^32.
/// Throws RandomnessExhausted after a bounded number of draws.
UniPoly random_primitive_quartic(const PrimeField& field, Stream& rng);
bool is_primitive_quartic(const UniPoly& f, std::span<const std::uint64_t> primes_of_q4_minus_1);

/// True when a^n = I and a^(n/p) != I for each listed prime p | n.
bool has_exact_order(const MatrixFq& a, u128 n, std::span<const std::uint64_t> primes);

/// Public automorphism pair of the framed Veronese variety.
struct AutomorphismKey {
  MatrixFq a1;
  MatrixFq a2;
  /// The GL(4) generators U1', U2' (secret, kept for diagnostics).
  MatrixFq u1;
  MatrixFq u2;
  /// Order of the generators: q^4 - 1 for version 1, the exact GenPerm order for version 2.
  u128 generator_order1 = 0;
  u128 generator_order2 = 0;
  int version = 1;
};

/// A_i = M_U * glemb(U_i', m) * M_U^{-1} with U_i' companion matrices of random primitive quartics.
AutomorphismKey gen_automorphism_pair(const VeroneseFrame& frame, Stream& rng);

/// Generalized permutation variant: U_i' are 4-cycles with scales whose product generates
/// F_q^*, so their order is exactly 4(q-1). The frame must itself be a generalized permutation.
AutomorphismKey gen_permutation_variant(const VeroneseFrame& frame, Stream& rng);

}  // namespace qsi
