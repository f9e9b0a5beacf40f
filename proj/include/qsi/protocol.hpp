#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>

#include "qsi/embeddings.hpp"
#include "qsi/factor.hpp"
#include "qsi/jinv.hpp"

namespace qsi {

/// Largest m accepted by keygen; recombination and dense powering stay desk-scale below it.
inline constexpr int kMaxDegree = 10;

/// Exponents (m1, m2, m1', m2') of the word A1^m1 A2^m2 A1^m1' A2^m2'.
using ExponentWord = std::array<u128, 4>;

struct PublicBundle {
  PrimeField field;
  int m;
  int version;
  MatrixFq a1;
  MatrixFq a2;
  MatrixFq sigma_p;
  RowVector h;
};

struct SecretKey {
  PrimeField field;
  int m;
  int version;
  MatrixFq sigma_s;
  MatrixFq frame;  // diagnostics only
};

struct KeyPair {
  PublicBundle pub;
  SecretKey sec;
};

struct ResponderMessage {
  RowVector h;
};

struct SharedKey {
  Fq j;
};

struct RespondDiagnostics {
  int attempts = 0;
  std::map<ErrorKind, int> rejections;
  ExponentWord word{};
};

struct ResponderResult {
  ResponderMessage msg;
  SharedKey key;
  BiForm component;
  MatrixFq sigma_b;
  RespondDiagnostics diagnostics;
};

/// Throws InvalidParameters unless m >= 3, m != 4, m <= kMaxDegree, version in {1, 2}.
void validate_parameters(std::uint64_t q, int m, int version);

/// Size of the exponent range: q^4 for version 1, 4(q - 1) for version 2.
u128 exponent_bound(const PrimeField& field, int version);

/// Random frame, automorphism pair, independent secret and public sigma embeddings,
/// and a hyperplane through the secret image.
KeyPair keygen_user(std::uint64_t q, int m, int version, std::uint64_t seed);

/// A1^e0 A2^e1 A1^e2 A2^e3 * m. Version-2 bundles take the generalized permutation path.
MatrixFq apply_word(const PublicBundle& pub, const ExponentWord& word, const MatrixFq& m);

/// Draws exponent words from the seed until the responder's own key is well defined.
/// Throws RetriesExhausted after `max_attempts` rejected words.
ResponderResult respond(const PublicBundle& pub, std::uint64_t seed, int max_attempts = 32);

/// One fixed word, no resampling; errors surface to the caller.
ResponderResult respond_with_word(const PublicBundle& pub, const ExponentWord& word, std::uint64_t seed);

/// Pullback of the responder hyperplane through the secret embedding. Throws
/// NoComponent (including a zero pullback), Ambiguous or SingularCurve.
SharedKey accept(const SecretKey& sec, const ResponderMessage& msg);

/// The (2,2) component and j of h pulled back through sigma; shared by all flows.
std::pair<BiForm, Fq> component_and_j(const RowVector& h, const MatrixFq& sigma, int m, Stream& rng);

// --- trusted third party -----------------------------------------------------------

struct TTPParams {
  PrimeField field;
  int m;
  MatrixFq sigma_t;
  MatrixFq t1;
  MatrixFq t2;
};

struct TTPSetup {
  TTPParams params;
  MatrixFq frame;  // Trent's secret
};

struct TTPUser {
  ExponentWord word;
  MatrixFq sigma;  // secret
  RowVector h;     // public key
};

TTPSetup ttp_setup(std::uint64_t q, int m, std::uint64_t seed);

/// Exponents uniform in [1, q^4 - 1]. With `sparse`, H is a row of the reduced
/// cokernel basis: one 1 and C(m+3,3) - (m+1)^2 - 1 zeros.
TTPUser ttp_register(const TTPParams& params, std::uint64_t seed, bool sparse = false);
TTPUser ttp_register_with_word(const TTPParams& params, const ExponentWord& word, std::uint64_t seed,
                               bool sparse = false);

SharedKey ttp_shared(const TTPParams& params, const TTPUser& self, const RowVector& other_h);

/// Row of the reduced cokernel basis of m chosen at random; DegenerateChoice if trivial.
RowVector sparse_cokernel_element(const MatrixFq& m, Stream& rng);

/// Bits of a sparse normalized public hyperplane: l * (m+1)^2.
std::uint64_t public_key_bits(int m, int l);
/// Bits of a dense hyperplane: l * C(m+3,3).
std::uint64_t dense_hyperplane_bits(int m, int l);
/// Bits of the public sigma matrix: l * (m+1)^2 * C(m+3,3).
std::uint64_t public_matrix_bits(int m, int l);
/// Binary length of q.
int bit_length(std::uint64_t q);

}  // namespace qsi
