#pragma once

#include <utility>
#include <vector>

#include "qsi/error.hpp"
#include "qsi/forms.hpp"
#include "qsi/poly.hpp"

namespace qsi {

/// scalar * prod factor^multiplicity reproduces the input exactly. Factors are
/// irreducible over F_q, normalized (first nonzero coefficient 1) and sorted.
struct FactorList {
  Residue scalar = 0;
  std::vector<std::pair<BiForm, unsigned>> factors;
};

/// Complete factorization of a nonzero biform. Throws ZeroPolynomial, or
/// FactorizationFailed when no separable specialization exists (tiny q only).
FactorList factor_biform(const BiForm& g, Stream& rng);
FactorList factor_biform(const BiForm& g);

/// Multiplies a factor list back out.
BiForm expand(const FactorList& list);

/// Raised by extract_22 when more than one candidate (2,2) component exists.
class AmbiguousComponents : public Error {
 public:
  explicit AmbiguousComponents(std::vector<BiForm> candidates);
  const std::vector<BiForm>& candidates() const noexcept { return candidates_; }

 private:
  std::vector<BiForm> candidates_;
};

/// Candidate (2,2) components of g, normalized. Irreducible (2,2) factors take
/// precedence; products of smaller factors are listed only when none exists.
struct ComponentSearch {
  std::vector<BiForm> irreducible;
  std::vector<BiForm> composite;
};
ComponentSearch find_22_components(const FactorList& list);

/// The unique irreducible (2,2) component of g as a one-element list. Throws
/// NoComponent, AmbiguousComponents (kind Ambiguous) or ZeroPolynomial.
std::vector<BiForm> extract_22(const BiForm& g, Stream& rng);
std::vector<BiForm> extract_22(const BiForm& g);

}  // namespace qsi
