#include "qsi/protocol.hpp"

#include "qsi/error.hpp"

namespace qsi {

namespace {

constexpr int kSigmaAttempts = 16;

bool retryable(ErrorKind k) {
  switch (k) {
    case ErrorKind::DegenerateChoice:
    case ErrorKind::NoComponent:
    case ErrorKind::Ambiguous:
    case ErrorKind::SingularCurve:
    case ErrorKind::FactorizationFailed:
      return true;
    default:
      return false;
  }
}

ExponentWord draw_word(Stream& rng, u128 bound, u128 offset = 0) {
  ExponentWord w{};
  for (auto& e : w) e = offset + rng.uniform_wide(bound);
  return w;
}

MatrixFq word_times(const MatrixFq& a1, const MatrixFq& a2, const ExponentWord& w, const MatrixFq& m) {
  return pow(a1, w[0]) * (pow(a2, w[1]) * (pow(a1, w[2]) * (pow(a2, w[3]) * m)));
}

}  // namespace

void validate_parameters(std::uint64_t q, int m, int version) {
  PrimeField field(q);  // InvalidModulus for bad q
  if (m < 3) throw Error(ErrorKind::InvalidParameters, "m must be at least 3");
  if (m == 4) throw Error(ErrorKind::InvalidParameters, "m = 4 leaves the (2,2) component ambiguous");
  if (m > kMaxDegree) throw Error(ErrorKind::InvalidParameters, "m above the supported maximum");
  if (version != 1 && version != 2) throw Error(ErrorKind::InvalidParameters, "version must be 1 or 2");
  if (version == 1 && q >= (std::uint64_t{1} << 32))
    throw Error(ErrorKind::InvalidParameters, "version 1 needs q < 2^32 so that q^4 fits the exponent type");
}

u128 exponent_bound(const PrimeField& field, int version) {
  const u128 q = field.modulus();
  return version == 2 ? 4 * (q - 1) : q * q * q * q;
}

KeyPair keygen_user(std::uint64_t q, int m, int version, std::uint64_t seed) {
  validate_parameters(q, m, version);
  const PrimeField field(q);
  const Stream root(seed, "qsi.keygen");
  Stream frame_rng = root.split("frame");
  const VeroneseFrame frame = version == 2 ? VeroneseFrame::random_generalized_permutation(field, m, frame_rng)
                                           : VeroneseFrame::random(field, m, frame_rng);
  Stream auto_rng = root.split("automorphisms");
  AutomorphismKey aut = version == 2 ? gen_permutation_variant(frame, auto_rng) : gen_automorphism_pair(frame, auto_rng);

  Stream sigma_rng = root.split("sigma");
  const Index cols = static_cast<Index>((m + 1) * (m + 1));
  for (int attempt = 0; attempt < kSigmaAttempts; ++attempt) {
    SigmaEmbedding s = sigma_compose(frame, MatrixFq::random_invertible(field, 4, sigma_rng));
    SigmaEmbedding p = sigma_compose(frame, MatrixFq::random_invertible(field, 4, sigma_rng));
    if (rank(hstack(s.matrix(), p.matrix())) == cols) continue;  // same image
    Stream h_rng = root.split("hyperplane");
    RowVector h = random_cokernel_element(s.matrix(), h_rng);
    PublicBundle pub{field, m, version, std::move(aut.a1), std::move(aut.a2), p.matrix(), std::move(h)};
    SecretKey sec{field, m, version, s.matrix(), frame.matrix()};
    return {std::move(pub), std::move(sec)};
  }
  throw Error(ErrorKind::RandomnessExhausted, "secret and public embeddings keep coinciding");
}

MatrixFq apply_word(const PublicBundle& pub, const ExponentWord& word, const MatrixFq& m) {
  if (pub.version == 2) {
    auto g1 = GenPerm::from_dense(pub.a1);
    auto g2 = GenPerm::from_dense(pub.a2);
    if (!g1 || !g2) throw Error(ErrorKind::MalformedInput, "version-2 automorphisms must be generalized permutations");
    return pow(*g1, word[0]) * (pow(*g2, word[1]) * (pow(*g1, word[2]) * (pow(*g2, word[3]) * m)));
  }
  return word_times(pub.a1, pub.a2, word, m);
}

std::pair<BiForm, Fq> component_and_j(const RowVector& h, const MatrixFq& sigma, int m, Stream& rng) {
  const BiForm g = pullback(h, sigma, m);
  if (g.is_zero()) throw Error(ErrorKind::NoComponent, "hyperplane contains the whole embedded surface");
  BiForm c = extract_22(g, rng).front();
  Fq j = j_invariant(c);
  return {std::move(c), j};
}

ResponderResult respond_with_word(const PublicBundle& pub, const ExponentWord& word, std::uint64_t seed) {
  Stream rng(seed, "qsi.respond.word");
  MatrixFq sigma_b = apply_word(pub, word, pub.sigma_p);
  const BiForm g = pullback(pub.h, sigma_b, pub.m);
  if (g.is_zero()) throw Error(ErrorKind::DegenerateChoice, "public hyperplane contains the responder surface");
  BiForm c = extract_22(g, rng).front();
  const Fq j = j_invariant(c);
  RowVector hb = random_cokernel_element(sigma_b, rng);
  RespondDiagnostics diag;
  diag.attempts = 1;
  diag.word = word;
  return {ResponderMessage{std::move(hb)}, SharedKey{j}, std::move(c), std::move(sigma_b), diag};
}

ResponderResult respond(const PublicBundle& pub, std::uint64_t seed, int max_attempts) {
  const Stream root(seed, "qsi.respond");
  const u128 bound = exponent_bound(pub.field, pub.version);
  RespondDiagnostics diag;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Stream rng = root.split("attempt", static_cast<std::uint64_t>(attempt));
    const ExponentWord word = draw_word(rng, bound);
    ++diag.attempts;
    try {
      ResponderResult r = respond_with_word(pub, word, rng.next());
      r.diagnostics.attempts = diag.attempts;
      r.diagnostics.rejections = diag.rejections;
      return r;
    } catch (const Error& e) {
      if (!retryable(e.kind())) throw;
      ++diag.rejections[e.kind()];
    }
  }
  throw Error(ErrorKind::RetriesExhausted, "no usable exponent word within " + std::to_string(max_attempts) + " draws");
}

SharedKey accept(const SecretKey& sec, const ResponderMessage& msg) {
  if (msg.h.is_zero()) throw Error(ErrorKind::InvalidParameters, "responder hyperplane is zero");
  Stream rng(0, "qsi.accept");
  return SharedKey{component_and_j(msg.h, sec.sigma_s, sec.m, rng).second};
}

// --- trusted third party -----------------------------------------------------------

TTPSetup ttp_setup(std::uint64_t q, int m, std::uint64_t seed) {
  validate_parameters(q, m, 1);
  const PrimeField field(q);
  const Stream root(seed, "qsi.ttp");
  Stream frame_rng = root.split("frame");
  const VeroneseFrame frame = VeroneseFrame::random(field, m, frame_rng);
  Stream auto_rng = root.split("automorphisms");
  AutomorphismKey aut = gen_automorphism_pair(frame, auto_rng);
  Stream sigma_rng = root.split("sigma");
  SigmaEmbedding sigma = sigma_compose(frame, MatrixFq::random_invertible(field, 4, sigma_rng));
  return {TTPParams{field, m, sigma.matrix(), std::move(aut.a1), std::move(aut.a2)}, frame.matrix()};
}

RowVector sparse_cokernel_element(const MatrixFq& m, Stream& rng) {
  const auto basis = left_nullspace(m);
  if (basis.empty()) throw Error(ErrorKind::DegenerateChoice, "trivial cokernel");
  return basis[static_cast<std::size_t>(rng.uniform(static_cast<std::uint64_t>(basis.size())))];
}

TTPUser ttp_register_with_word(const TTPParams& params, const ExponentWord& word, std::uint64_t seed, bool sparse) {
  Stream rng(seed, "qsi.ttp.register.hyperplane");
  MatrixFq sigma = word_times(params.t1, params.t2, word, params.sigma_t);
  RowVector h = sparse ? sparse_cokernel_element(sigma, rng) : random_cokernel_element(sigma, rng);
  return {word, std::move(sigma), std::move(h)};
}

TTPUser ttp_register(const TTPParams& params, std::uint64_t seed, bool sparse) {
  Stream rng(seed, "qsi.ttp.register");
  const u128 q = params.field.modulus();
  const ExponentWord word = draw_word(rng, q * q * q * q - 1, 1);
  return ttp_register_with_word(params, word, rng.next(), sparse);
}

SharedKey ttp_shared(const TTPParams& params, const TTPUser& self, const RowVector& other_h) {
  Stream rng(0, "qsi.ttp.shared");
  return SharedKey{component_and_j(other_h, self.sigma, params.m, rng).second};
}

std::uint64_t public_key_bits(int m, int l) {
  return static_cast<std::uint64_t>(l) * static_cast<std::uint64_t>((m + 1) * (m + 1));
}

std::uint64_t dense_hyperplane_bits(int m, int l) {
  return static_cast<std::uint64_t>(l) * binomial(static_cast<std::uint64_t>(m + 3), 3);
}

std::uint64_t public_matrix_bits(int m, int l) {
  return public_key_bits(m, l) * binomial(static_cast<std::uint64_t>(m + 3), 3);
}

int bit_length(std::uint64_t q) {
  int l = 0;
  while (q) {
    ++l;
    q >>= 1;
  }
  return l;
}

}  // namespace qsi
