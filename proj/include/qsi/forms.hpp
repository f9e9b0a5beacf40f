#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "qsi/linalg.hpp"

namespace qsi {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Degree-d monomials in n variables, listed in descending lexicographic order of
/// their exponent vectors (X0^d first, X_{n-1}^d last).
class MonomialBasis {
 public:
  MonomialBasis(int n_vars, int degree);

  int n_vars() const noexcept { return n_vars_; }
  int degree() const noexcept { return degree_; }
  Index size() const noexcept { return size_; }

  std::span<const int> exponents(Index i) const {
    return {exps_.data() + i * n_vars_, static_cast<std::size_t>(n_vars_)};
  }
  /// Rank of an exponent vector; throws InvalidParameters if it is not of this degree.
  Index index_of(std::span<const int> e) const;

  /// Values of all basis monomials at a point, in basis order.
  std::vector<Residue> evaluate(const PrimeField& field, std::span<const Residue> point) const;

 private:
  int n_vars_;
  int degree_;
  Index size_;
  std::vector<int> exps_;
};

/// Point of P^1 given by a nonzero coordinate pair.
struct Point1 {
  Residue x0;
  Residue x1;
};

/// Bihomogeneous form of bidegree (d1, d2) on P^1 x P^1. Coefficient (i, j) multiplies
/// X0^(d1-i) X1^i Y0^(d2-j) Y1^j and is stored at position i * (d2 + 1) + j.
class BiForm {
 public:
  BiForm(const PrimeField& field, int d1, int d2);
  BiForm(const PrimeField& field, int d1, int d2, std::vector<Residue> coeffs);

  static BiForm monomial(const PrimeField& field, int d1, int d2, int i, int j, Residue c = 1);
  static BiForm random(const PrimeField& field, int d1, int d2, Stream& rng);

  const PrimeField& field() const noexcept { return field_; }
  int d1() const noexcept { return d1_; }
  int d2() const noexcept { return d2_; }
  Residue coeff(int i, int j) const { return coeffs_[static_cast<std::size_t>(i * (d2_ + 1) + j)]; }
  void set(int i, int j, Residue v) { coeffs_[static_cast<std::size_t>(i * (d2_ + 1) + j)] = field_.reduce(v); }
  const std::vector<Residue>& coeffs() const noexcept { return coeffs_; }

  bool is_zero() const;
  /// Scaled so that the first nonzero coefficient is 1 (zero form unchanged).
  BiForm normalized() const;
  bool is_normalized() const;
  BiForm scaled(Residue s) const;
  /// Exchange the roles of the X and Y blocks.
  BiForm swapped() const;

  friend bool operator==(const BiForm& a, const BiForm& b) {
    return a.field_ == b.field_ && a.d1_ == b.d1_ && a.d2_ == b.d2_ && a.coeffs_ == b.coeffs_;
  }

 private:
  PrimeField field_;
  int d1_;
  int d2_;
  std::vector<Residue> coeffs_;
};

BiForm operator*(const BiForm& f, const BiForm& g);
BiForm operator+(const BiForm& f, const BiForm& g);
BiForm operator-(const BiForm& f, const BiForm& g);

/// Value at affine representatives of (P, Q); meaningful only for zero tests.
Residue eval(const BiForm& f, Point1 p, Point1 q);
bool same_up_to_scalar(const BiForm& a, const BiForm& b);

/// Column of the (m+1)^2 bidegree-(m,m) monomials at (P, Q), ordered like BiForm.
MatrixFq bidegree_monomials(const PrimeField& field, int m, Point1 p, Point1 q);

/// Column index, in the bidegree-(m,m) basis, hit by each Z-monomial of degree m in
/// Z0 = X0Y0, Z1 = X0Y1, Z2 = X1Y0, Z3 = X1Y1. Computed once per m.
const std::vector<Index>& expansion_columns(int m);
/// The C(m+3,3) x (m+1)^2 zero/one matrix of Z_ab -> X_a Y_b on degree-m monomials.
MatrixFq expansion_matrix(int m, const PrimeField& field);

/// h * sigma reinterpreted as a bidegree-(m,m) form; sigma has (m+1)^2 columns.
BiForm pullback(const RowVector& h, const MatrixFq& sigma, int m);

/// `d1 d2` line followed by one line of coefficients in storage order.
void write_text(std::ostream& os, const BiForm& f);
BiForm read_biform(std::istream& is, const PrimeField& field);

}  // namespace qsi
