#pragma once

#include <utility>
#include <vector>

#include "qsi/ff.hpp"

namespace qsi {

/// Dense univariate polynomial over F_q, ascending coefficients, no trailing zeros.
class UniPoly {
 public:
  explicit UniPoly(const PrimeField& field) : field_(field) {}
  UniPoly(const PrimeField& field, std::vector<Residue> ascending);

  static UniPoly constant(const PrimeField& field, Residue c);
  /// c * x^k
  static UniPoly monomial(const PrimeField& field, int k, Residue c = 1);
  static UniPoly from_signed(const PrimeField& field, std::initializer_list<std::int64_t> ascending);
  static UniPoly random(const PrimeField& field, int max_degree, Stream& rng);

  const PrimeField& field() const noexcept { return field_; }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
  Residue operator[](int k) const noexcept {
    return k >= 0 && k < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(k)] : 0;
  }
  Residue lead() const noexcept { return c_.empty() ? 0 : c_.back(); }
  const std::vector<Residue>& coeffs() const noexcept { return c_; }

  UniPoly monic() const;
  UniPoly scaled(Residue s) const;
  UniPoly derivative() const;
  Residue eval(Residue x) const;
  /// p(x + s)
  UniPoly shifted(Residue s) const;

  friend bool operator==(const UniPoly& a, const UniPoly& b) noexcept {
    return a.field_ == b.field_ && a.c_ == b.c_;
  }
  /// Orders by degree, then coefficients from the top; used to sort factor lists.
  friend bool operator<(const UniPoly& a, const UniPoly& b) noexcept;

 private:
  void trim();

  PrimeField field_;
  std::vector<Residue> c_;
};

UniPoly operator+(const UniPoly& a, const UniPoly& b);
UniPoly operator-(const UniPoly& a, const UniPoly& b);
UniPoly operator*(const UniPoly& a, const UniPoly& b);
/// Quotient and remainder; DivisionByZero for b = 0.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
UniPoly operator/(const UniPoly& a, const UniPoly& b);
UniPoly operator%(const UniPoly& a, const UniPoly& b);

/// Monic gcd (zero only if both inputs are zero).
UniPoly gcd(const UniPoly& a, const UniPoly& b);

struct ExtendedGcd {
  UniPoly g;  // monic
  UniPoly s;
  UniPoly t;  // s*a + t*b = g
};
ExtendedGcd extended_gcd(const UniPoly& a, const UniPoly& b);

/// base^e mod m.
UniPoly powmod(const UniPoly& base, u128 e, const UniPoly& m);

struct UniFactorization {
  Residue leading = 0;
  std::vector<std::pair<UniPoly, unsigned>> factors;  // monic irreducible, sorted
};

/// Squarefree decomposition, distinct-degree, then equal-degree (Cantor-Zassenhaus) splitting.
/// Throws ZeroPolynomial.
UniFactorization factor(const UniPoly& f, Stream& rng);
UniFactorization factor(const UniPoly& f);

bool is_irreducible(const UniPoly& f);

}  // namespace qsi
