#pragma once

#include <Eigen/Core>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <vector>

#include "qsi/ff.hpp"

namespace qsi {

using Index = Eigen::Index;
using ResidueMatrix = Eigen::Matrix<Residue, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Dense matrix over F_q. Entries live in an Eigen array of fully reduced residues;
/// all arithmetic goes through the modular kernels below, never through Eigen's
/// own operators (which would overflow).
class MatrixFq {
 public:
  MatrixFq(const PrimeField& field, Index rows, Index cols);
  /// Entries must already be reduced; throws InvalidParameters otherwise.
  MatrixFq(const PrimeField& field, ResidueMatrix entries);

  static MatrixFq identity(const PrimeField& field, Index n);
  static MatrixFq from_rows(const PrimeField& field, std::initializer_list<std::initializer_list<std::int64_t>> rows);
  static MatrixFq random(const PrimeField& field, Index rows, Index cols, Stream& rng);
  /// Rejection-sampled uniform element of GL(n, F_q).
  static MatrixFq random_invertible(const PrimeField& field, Index n, Stream& rng);

  const PrimeField& field() const noexcept { return field_; }
  Index rows() const noexcept { return data_.rows(); }
  Index cols() const noexcept { return data_.cols(); }
  bool square() const noexcept { return rows() == cols(); }

  Residue operator()(Index i, Index j) const { return data_(i, j); }
  void set(Index i, Index j, Residue v) { data_(i, j) = field_.reduce(v); }
  const ResidueMatrix& entries() const noexcept { return data_; }

  MatrixFq row(Index i) const;
  MatrixFq col(Index j) const;
  MatrixFq transpose() const;
  bool is_zero() const { return (data_.array() == 0).all(); }

  friend bool operator==(const MatrixFq& a, const MatrixFq& b) {
    return a.field_ == b.field_ && a.rows() == b.rows() && a.cols() == b.cols() && a.data_ == b.data_;
  }

 private:
  PrimeField field_;
  ResidueMatrix data_;
};

/// Row vector (1 x n) alias used for hyperplanes.
using RowVector = MatrixFq;

MatrixFq operator*(const MatrixFq& a, const MatrixFq& b);
MatrixFq operator+(const MatrixFq& a, const MatrixFq& b);
MatrixFq operator-(const MatrixFq& a, const MatrixFq& b);
MatrixFq operator*(Residue s, const MatrixFq& a);

/// a^e by square-and-multiply; a^0 = I.
MatrixFq pow(const MatrixFq& a, u128 e);
/// Throws SingularMatrix.
MatrixFq inverse(const MatrixFq& a);
Index rank(const MatrixFq& a);
bool is_invertible(const MatrixFq& a);

struct Echelon {
  MatrixFq reduced;          // reduced row echelon form
  std::vector<Index> pivots;  // pivot column of each nonzero row
};
Echelon rref(const MatrixFq& a);

/// Canonical basis of {h : h * m = 0}, one 1 x rows(m) vector per entry, in reduced
/// row echelon form (so the output depends only on the row space).
std::vector<RowVector> left_nullspace(const MatrixFq& m);
/// Same basis stacked as rows; zero rows when the space is trivial.
MatrixFq left_nullspace_matrix(const MatrixFq& m);
/// Uniform nonzero combination of the left nullspace basis; DegenerateChoice when trivial.
RowVector random_cokernel_element(const MatrixFq& m, Stream& rng);

MatrixFq hstack(const MatrixFq& a, const MatrixFq& b);
MatrixFq vstack(const MatrixFq& a, const MatrixFq& b);
/// True when some nonzero scalar s has a = s * b.
bool proportional(const MatrixFq& a, const MatrixFq& b);

/// `rows cols` line, then one line of whitespace-separated decimals per row.
void write_text(std::ostream& os, const MatrixFq& m);
/// Throws MalformedInput on truncated or out-of-range data.
MatrixFq read_matrix(std::istream& is, const PrimeField& field);

/// Generalized permutation matrix: row i holds scale[i] in column perm[i], zeros elsewhere.
class GenPerm {
 public:
  GenPerm(const PrimeField& field, std::vector<Index> perm, std::vector<Residue> scale);

  static GenPerm identity(const PrimeField& field, Index n);
  static GenPerm random(const PrimeField& field, Index n, Stream& rng);
  static std::optional<GenPerm> from_dense(const MatrixFq& m);

  const PrimeField& field() const noexcept { return field_; }
  Index size() const noexcept { return static_cast<Index>(perm_.size()); }
  const std::vector<Index>& perm() const noexcept { return perm_; }
  const std::vector<Residue>& scale() const noexcept { return scale_; }

  MatrixFq dense() const;
  GenPerm inverse() const;
  /// Exact multiplicative order: lcm over cycles of length * order(product of cycle scales).
  std::uint64_t order() const;

  friend bool operator==(const GenPerm& a, const GenPerm& b) {
    return a.field_ == b.field_ && a.perm_ == b.perm_ && a.scale_ == b.scale_;
  }

 private:
  PrimeField field_;
  std::vector<Index> perm_;
  std::vector<Residue> scale_;
};

GenPerm operator*(const GenPerm& a, const GenPerm& b);
MatrixFq operator*(const GenPerm& g, const MatrixFq& m);
MatrixFq operator*(const MatrixFq& m, const GenPerm& g);
GenPerm pow(const GenPerm& g, u128 e);

}  // namespace qsi
