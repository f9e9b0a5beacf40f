#pragma once

#include <cstdint>
#include <optional>

#include "qsi/protocol.hpp"

namespace qsi {

/// h_m = (1/2)[C(m+3,3) + 1] C(m+3,3) - C(2m+3,3): independent quadrics through V_{3,m}.
std::uint64_t expected_quadric_count(int m);
/// m(m^2 - 1)(m^3 + 12m^2 + 59m + 66), as printed; it equals 72 h_m.
std::uint64_t printed_closed_form(int m);
/// C(N+2,2) - (2m+1)^2: quadrics through a single embedded quadric surface.
std::uint64_t surface_quadric_count(int m);

enum class PointSource {
  Variety,  // frame * v_{3,m}(P), needs the secret frame
  Orbit,    // words in the public automorphisms applied to sigma points
  Surface,  // sigma points only
};

/// Quadrics on P^N as rows over the degree-2 monomials of N+1 variables (descending lex),
/// in reduced echelon form.
struct QuadricSystem {
  MatrixFq basis;
  std::uint64_t expected = 0;
  PointSource source = PointSource::Variety;
  int m = 0;
  Index points = 0;
};

/// Throws RankDeficient when the sampled points impose too few conditions.
QuadricSystem quadric_system(const VeroneseFrame& frame, Stream& rng);
QuadricSystem quadric_system(const SigmaEmbedding& sigma, Stream& rng);
/// The attacker's route: sample the variety through public data only.
QuadricSystem quadric_system(const MatrixFq& a1, const MatrixFq& a2, const SigmaEmbedding& sigma, Stream& rng);

/// Value of quadric `row` at a point (column vector).
Residue evaluate_quadric(const QuadricSystem& sys, Index row, const MatrixFq& point);

struct BruteForceTarget {
  MatrixFq a1;
  MatrixFq a2;
  MatrixFq sigma;
  RowVector h;
};

struct BruteForceResult {
  std::optional<ExponentWord> word;  // exponents reduced modulo the orders below
  std::uint64_t trials = 0;          // words tested up to and including the hit
  std::uint64_t order1 = 0;
  std::uint64_t order2 = 0;
};

BruteForceTarget brute_force_target(const PublicBundle& pub);
BruteForceTarget brute_force_target(const TTPParams& params, const RowVector& h_u);

/// Random prefixes (a, b, c) with a full sweep of the last exponent; tests h in
/// coker(A1^a A2^b A1^c A2^d sigma). Deterministic for a seed regardless of `threads`.
/// A zero budget returns no word.
BruteForceResult brute_force_search(const BruteForceTarget& target, std::uint64_t budget, std::uint64_t seed,
                                    unsigned threads = 1);

/// Exact multiplicative order of an invertible matrix whose order divides n.
std::uint64_t matrix_order(const MatrixFq& a, std::uint64_t n);

struct DegreeReport {
  std::uint64_t variety;    // m^3
  std::uint64_t component;  // 4m
};
DegreeReport degree_report(int m);

}  // namespace qsi
