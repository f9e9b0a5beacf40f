#include "qsi/toy.hpp"

#include <istream>
#include <map>
#include <sstream>

#include "qsi/error.hpp"

namespace qsi {

namespace detail {
extern const char* const kToyExample;
}

namespace {

std::uint64_t j_of_pullback(const BiForm& g) {
  Stream rng(0, "qsi.toy");
  return j_invariant(extract_22(g, rng).front()).value();
}

}  // namespace

ToyExample parse_toy(std::istream& in) {
  std::stringstream body;
  for (std::string line; std::getline(in, line);)
    if (line.empty() || line[0] != '#') body << line << '\n';

  std::map<std::string, std::uint64_t> scalars;
  std::map<std::string, std::string> blocks;
  std::string kw;
  std::optional<PrimeField> field;
  std::map<std::string, MatrixFq> matrices;
  std::map<std::string, BiForm> forms;
  try {
    while (body >> kw) {
      if (kw == "matrix" || kw == "form") {
        std::string name;
        if (!(body >> name) || !field) throw Error(ErrorKind::MalformedInput, "toy file: entry before q");
        if (kw == "matrix")
          matrices.emplace(name, read_matrix(body, *field));
        else
          forms.emplace(name, read_biform(body, *field));
      } else {
        std::string value;
        if (!(body >> value)) throw Error(ErrorKind::MalformedInput, "toy file: missing value for " + kw);
        scalars[kw] = static_cast<std::uint64_t>(parse_u128(value));
        if (kw == "q") field.emplace(scalars[kw]);
      }
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::MalformedInput) throw;
    throw Error(ErrorKind::MalformedInput, std::string("toy file: ") + e.what());
  }
  auto mat = [&](const char* n) {
    auto it = matrices.find(n);
    if (it == matrices.end()) throw Error(ErrorKind::MalformedInput, std::string("toy file: missing matrix ") + n);
    return it->second;
  };
  auto form = [&](const char* n) {
    auto it = forms.find(n);
    if (it == forms.end()) throw Error(ErrorKind::MalformedInput, std::string("toy file: missing form ") + n);
    return it->second;
  };
  for (const char* k : {"q", "m", "exponent", "expected_j"})
    if (!scalars.count(k)) throw Error(ErrorKind::MalformedInput, std::string("toy file: missing ") + k);
  return {*field,
          static_cast<int>(scalars["m"]),
          scalars["exponent"],
          scalars["expected_j"],
          mat("frame"),
          mat("automorphism"),
          mat("secret"),
          mat("public"),
          mat("responder"),
          mat("hyperplane"),
          form("responder_pullback"),
          form("responder_component"),
          form("initiator_pullback"),
          form("initiator_component")};
}

const ToyExample& toy_example() {
  static const ToyExample toy = [] {
    std::istringstream is(detail::kToyExample);
    return parse_toy(is);
  }();
  return toy;
}

bool ToyReport::agree() const {
  const auto& t = toy_example();
  return j_responder == t.expected_j && j_initiator == t.expected_j;
}

ToyReport verify_toy_example(std::uint64_t seed) {
  const ToyExample& t = toy_example();
  const PrimeField& f = t.field;
  ToyReport r;

  // Single-automorphism word: A2 is the identity.
  const Index n = t.automorphism.rows();
  PublicBundle pub{f, t.m, 1, t.automorphism, MatrixFq::identity(f, n), t.public_sigma, t.hyperplane};
  SecretKey sec{f, t.m, 1, t.secret, t.frame};
  r.hyperplane_annihilates_secret = (t.hyperplane * t.secret).is_zero();

  const ResponderResult resp = respond_with_word(pub, ExponentWord{t.exponent, 0, 0, 0}, seed);
  r.responder_sigma_matches = resp.sigma_b == t.responder_sigma;
  r.responder_pullback_matches = same_up_to_scalar(pullback(t.hyperplane, resp.sigma_b, t.m), t.responder_pullback);
  r.component_matches = same_up_to_scalar(resp.component, t.responder_component);
  r.j_responder = resp.key.j.value();
  r.j_initiator = accept(sec, resp.msg).j.value();

  r.j_printed_c1 = j_invariant(t.responder_component).value();
  r.j_printed_c2 = j_invariant(t.initiator_component).value();
  r.j_printed_responder_pullback = j_of_pullback(t.responder_pullback);
  r.j_printed_initiator_pullback = j_of_pullback(t.initiator_pullback);
  const FactorList fl = factor_biform(t.initiator_pullback);
  const BiForm c2 = t.initiator_component.normalized();
  for (const auto& [g, e] : fl.factors) r.initiator_component_divides |= g == c2;

  r.notes.push_back("printed responder hyperplane is malformed (entries >= q, 10 of 20 coordinates); regenerated from coker(M_B)");
  r.notes.push_back("printed secret and public embeddings are not v_{3,3} images under the printed frame; the exchange is still consistent");
  return r;
}

}  // namespace qsi
