// qsi: key generation, the two-party and TTP flows, the toy replay, statistics
// and the attack drivers. Exit status 0 ok, 2 degenerate choice, 3 bad input, 4 bug.
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qsi/analysis.hpp"
#include "qsi/error.hpp"
#include "qsi/keyfile.hpp"
#include "qsi/simulate.hpp"
#include "qsi/toy.hpp"

using namespace qsi;

namespace {

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("QSI_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::MalformedInput, "QSI_SEED is not an unsigned integer");
  }
  throw Error(ErrorKind::MalformedInput, "no --seed and no QSI_SEED");
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MalformedInput, "cannot read " + path);
  return in;
}

// Output is rendered fully before the file is touched.
template <typename Fn>
void save(const std::string& path, Fn&& render) {
  std::ostringstream os;
  render(os);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!(out << os.str())) throw Error(ErrorKind::InvariantViolation, "cannot write " + path);
}

std::string word_text(const ExponentWord& w) {
  return to_string(w[0]) + " " + to_string(w[1]) + " " + to_string(w[2]) + " " + to_string(w[3]);
}

std::string rate(std::size_t k, std::size_t n) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << (n == 0 ? 0.0 : static_cast<double>(k) / n);
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QSI key exchange"};
  app.require_subcommand(1);

  std::uint64_t q = 0;
  int m = 0, version = 1;
  std::optional<std::uint64_t> seed;
  std::string pub_path, sec_path, msg_path, key_path, ttp_path, user_path, peer_path;

  auto* keygen = app.add_subcommand("keygen", "generate a key pair");
  keygen->add_option("--q", q, "prime modulus")->required();
  keygen->add_option("--m", m, "Veronese degree")->required();
  keygen->add_option("--version", version)->check(CLI::IsMember({1, 2}));
  keygen->add_option("--seed", seed);
  keygen->add_option("--out-pub", pub_path)->required();
  keygen->add_option("--out-sec", sec_path)->required();

  auto* respond_cmd = app.add_subcommand("respond", "answer a public key");
  respond_cmd->add_option("--pub", pub_path)->required();
  respond_cmd->add_option("--seed", seed);
  respond_cmd->add_option("--out-msg", msg_path)->required();
  respond_cmd->add_option("--out-key", key_path)->required();

  auto* accept_cmd = app.add_subcommand("accept", "derive the key from a response");
  accept_cmd->add_option("--sec", sec_path)->required();
  accept_cmd->add_option("--msg", msg_path)->required();
  accept_cmd->add_option("--out-key", key_path)->required();

  auto* ttp_setup_cmd = app.add_subcommand("ttp-setup", "publish TTP parameters");
  ttp_setup_cmd->add_option("--q", q)->required();
  ttp_setup_cmd->add_option("--m", m)->required();
  ttp_setup_cmd->add_option("--seed", seed);
  ttp_setup_cmd->add_option("--out", ttp_path)->required();

  bool sparse = false;
  auto* ttp_register_cmd = app.add_subcommand("ttp-register", "register a user under TTP parameters");
  ttp_register_cmd->add_option("--ttp", ttp_path)->required();
  ttp_register_cmd->add_option("--seed", seed);
  ttp_register_cmd->add_flag("--sparse", sparse, "use a reduced cokernel row as public key");
  ttp_register_cmd->add_option("--out-user", user_path)->required();
  ttp_register_cmd->add_option("--out-pub", msg_path)->required();

  auto* ttp_derive_cmd = app.add_subcommand("ttp-derive", "shared key with another TTP user");
  ttp_derive_cmd->add_option("--ttp", ttp_path)->required();
  ttp_derive_cmd->add_option("--user", user_path)->required();
  ttp_derive_cmd->add_option("--peer", peer_path, "peer public key file")->required();
  ttp_derive_cmd->add_option("--out-key", key_path)->required();

  bool verbose = false;
  auto* verify = app.add_subcommand("verify-paper-example", "replay the F_67 toy exchange");
  verify->add_flag("-v,--verbose", verbose);

  std::size_t trials = 100;
  unsigned jobs = 1;
  auto* sim = app.add_subcommand("simulate", "end-to-end agreement statistics");
  sim->add_option("--q", q)->required();
  sim->add_option("--m", m)->required();
  sim->add_option("--trials", trials);
  sim->add_option("--seed", seed);
  sim->add_option("--version", version)->check(CLI::IsMember({1, 2}));
  sim->add_option("--jobs", jobs);

  auto* attack = app.add_subcommand("attack", "analysis drivers");
  attack->require_subcommand(1);
  std::string source = "variety";
  auto* quadrics = attack->add_subcommand("quadrics", "quadrics through the embedded variety");
  quadrics->add_option("--q", q)->required();
  quadrics->add_option("--m", m)->required();
  quadrics->add_option("--seed", seed);
  quadrics->add_option("--source", source)->check(CLI::IsMember({"variety", "orbit", "surface"}));

  std::uint64_t budget = 0;
  auto* brute = attack->add_subcommand("brute", "exhaustive word search");
  brute->add_option("--pub", pub_path, "attack this public key instead of a planted TTP user");
  brute->add_option("--q", q);
  brute->add_option("--m", m);
  brute->add_option("--seed", seed);
  brute->add_option("--budget", budget, "word budget (default 10 q^9)");
  brute->add_option("--threads", jobs);

  int bits = 64;
  auto* degrees = attack->add_subcommand("degrees", "degree facts and key sizes");
  degrees->add_option("--m", m)->required();
  degrees->add_option("--bits", bits, "bit length of q for the size report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  try {
    if (*keygen) {
      const KeyPair kp = keygen_user(q, m, version, resolve_seed(seed));
      save(pub_path, [&](std::ostream& os) { write_public(os, kp.pub); });
      save(sec_path, [&](std::ostream& os) { write_secret(os, kp.sec); });
    } else if (*respond_cmd) {
      auto in = open_in(pub_path);
      const PublicBundle pub = read_public(in);
      const ResponderResult res = respond(pub, resolve_seed(seed));
      const KeyHeader header{pub.field.modulus(), pub.m, pub.version};
      save(msg_path, [&](std::ostream& os) { write_message(os, header, res.msg); });
      save(key_path, [&](std::ostream& os) { write_shared(os, header, res.key); });
      std::cout << "j=" << res.key.j << " attempts=" << res.diagnostics.attempts << "\n";
    } else if (*accept_cmd) {
      auto sin = open_in(sec_path);
      auto min = open_in(msg_path);
      const SecretKey sec = read_secret(sin);
      const auto [header, msg] = read_message(min);
      if (header.q != sec.field.modulus() || header.m != sec.m)
        throw Error(ErrorKind::MalformedInput, "message parameters do not match the secret key");
      const SharedKey key = accept(sec, msg);
      save(key_path, [&](std::ostream& os) { write_shared(os, header, key); });
      std::cout << "j=" << key.j << "\n";
    } else if (*ttp_setup_cmd) {
      const TTPSetup setup = ttp_setup(q, m, resolve_seed(seed));
      save(ttp_path, [&](std::ostream& os) { write_ttp(os, setup.params); });
    } else if (*ttp_register_cmd) {
      auto in = open_in(ttp_path);
      const TTPParams params = read_ttp(in);
      const TTPUser user = ttp_register(params, resolve_seed(seed), sparse);
      const KeyHeader header{params.field.modulus(), params.m, 1};
      save(user_path, [&](std::ostream& os) { write_user(os, params, user); });
      save(msg_path, [&](std::ostream& os) { write_message(os, header, ResponderMessage{user.h}); });
    } else if (*ttp_derive_cmd) {
      auto tin = open_in(ttp_path);
      const TTPParams params = read_ttp(tin);
      auto uin = open_in(user_path);
      const TTPUser user = read_user(uin, params);
      auto pin = open_in(peer_path);
      const auto [header, peer] = read_message(pin);
      if (header.q != params.field.modulus() || header.m != params.m)
        throw Error(ErrorKind::MalformedInput, "peer key parameters do not match the TTP file");
      const SharedKey key = ttp_shared(params, user, peer.h);
      save(key_path, [&](std::ostream& os) { write_shared(os, header, key); });
      std::cout << "j=" << key.j << "\n";
    } else if (*verify) {
      const ToyReport r = verify_toy_example();
      std::cout << "j=" << r.j_responder << " j=" << r.j_initiator << (r.agree() ? " agree" : " disagree") << "\n";
      if (verbose) {
        std::cerr << "responder sigma matches printed: " << r.responder_sigma_matches << "\n"
                  << "responder pullback matches printed: " << r.responder_pullback_matches << "\n"
                  << "component matches printed C1: " << r.component_matches << "\n"
                  << "j(printed C1)=" << r.j_printed_c1 << " j(printed C2)=" << r.j_printed_c2 << "\n"
                  << "j(printed pullbacks)=" << r.j_printed_responder_pullback << ","
                  << r.j_printed_initiator_pullback << "\n";
        for (const auto& n : r.notes) std::cerr << "note: " << n << "\n";
      }
      if (!r.agree()) return 4;
    } else if (*sim) {
      const SimulationStats s = simulate(q, m, version, trials, resolve_seed(seed), jobs);
      const std::size_t n = s.trials.size();
      std::cout << "q=" << q << " m=" << m << " version=" << version << " trials=" << n << "\n"
                << "completed=" << s.completed() << " agreed=" << s.agreed()
                << " agreement_rate=" << rate(s.agreed(), s.completed()) << "\n"
                << "errored=" << s.errored() << " error_rate=" << rate(s.errored(), n) << "\n";
      for (const auto& [kind, count] : s.errors()) std::cout << "error." << token(kind) << "=" << count << "\n";
      std::cout << std::fixed << std::setprecision(4) << "responder_words=" << s.total_attempts()
                << " singular_rate=" << s.rejection_rate(ErrorKind::SingularCurve)
                << " ambiguity_rate=" << s.rejection_rate(ErrorKind::Ambiguous)
                << " no_component_rate=" << s.rejection_rate(ErrorKind::NoComponent) << "\n"
                << "cpu_seconds=" << s.total_seconds() << " per_trial=" << (n ? s.total_seconds() / n : 0.0)
                << "\n";
      if (s.agreed() != s.completed()) return 4;
    } else if (*quadrics) {
      const std::uint64_t sd = resolve_seed(seed);
      Stream rng(sd, "qsi.attack.quadrics");
      const PrimeField f(q);
      const QuadricSystem sys = [&] {
        if (source == "variety") return quadric_system(VeroneseFrame::random(f, m, rng), rng);
        const KeyPair kp = keygen_user(q, m, 1, sd);
        const SigmaEmbedding sigma(kp.pub.sigma_p, m);
        return source == "orbit" ? quadric_system(kp.pub.a1, kp.pub.a2, sigma, rng) : quadric_system(sigma, rng);
      }();
      std::cout << "source=" << source << " q=" << q << " m=" << m << " points=" << sys.points
                << " quadrics=" << sys.basis.rows() << " expected=" << sys.expected << "\n";
    } else if (*brute) {
      const std::uint64_t sd = resolve_seed(seed);
      std::uint64_t modulus = q;
      const BruteForceTarget target = [&] {
        if (!pub_path.empty()) {
          auto in = open_in(pub_path);
          const PublicBundle pub = read_public(in);
          modulus = pub.field.modulus();
          return brute_force_target(pub);
        }
        if (q == 0 || m == 0) throw Error(ErrorKind::InvalidParameters, "planted search needs --q and --m");
        const TTPSetup setup = ttp_setup(q, m, sd);
        const TTPUser victim = ttp_register(setup.params, sd + 1);
        std::cout << "planted_word=" << word_text(victim.word) << "\n";
        return brute_force_target(setup.params, victim.h);
      }();
      u128 q9 = 1;
      for (int i = 0; i < 9; ++i) q9 *= modulus;
      if (budget == 0) budget = static_cast<std::uint64_t>(std::min<u128>(10 * q9, ~std::uint64_t{0}));
      const BruteForceResult r = brute_force_search(target, budget, sd, std::max(1u, jobs));
      std::cout << "found=" << (r.word ? "yes" : "no") << " trials=" << r.trials << " q9=" << to_string(q9)
                << " ratio=" << std::fixed << std::setprecision(3) << static_cast<double>(r.trials) / static_cast<double>(q9)
                << " order1=" << r.order1 << " order2=" << r.order2 << "\n";
      if (r.word) std::cout << "word=" << word_text(*r.word) << "\n";
      if (!r.word) return exit_code(ErrorKind::RetriesExhausted);
    } else if (*degrees) {
      if (m < 1) throw Error(ErrorKind::InvalidParameters, "m must be positive");
      const DegreeReport d = degree_report(m);
      std::cout << "m=" << m << " deg_variety=" << d.variety << " deg_component=" << d.component << "\n";
      if (m >= 2)
        std::cout << "quadrics=" << expected_quadric_count(m) << " printed_closed_form=" << printed_closed_form(m)
                  << " surface_quadrics=" << surface_quadric_count(m) << "\n";
      std::cout << "bits=" << bits << " public_key_bits=" << public_key_bits(m, bits)
                << " dense_hyperplane_bits=" << dense_hyperplane_bits(m, bits)
                << " public_matrix_bits=" << public_matrix_bits(m, bits) << "\n";
    }
  } catch (const Error& e) {
    std::cerr << "error " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error InvariantViolation: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
