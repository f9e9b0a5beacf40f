#include "qsi/keyfile.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "qsi/error.hpp"

namespace qsi {

namespace {

constexpr const char* kMagic = "QSI1";

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::MalformedInput, what); }

void write_header(std::ostream& os, const char* role, const KeyHeader& h) {
  os << kMagic << "\nrole " << role << "\nq " << h.q << "\nm " << h.m << "\nversion " << h.version << "\n";
}

std::string next_token(std::istream& is, const char* what) {
  std::string tok;
  if (!(is >> tok)) malformed(std::string("truncated file: expected ") + what);
  return tok;
}

void expect(std::istream& is, const std::string& want) {
  const std::string got = next_token(is, want.c_str());
  if (got != want) malformed("expected '" + want + "', found '" + got + "'");
}

std::uint64_t read_number(std::istream& is, const char* name) {
  expect(is, name);
  const std::string tok = next_token(is, name);
  const u128 v = parse_u128(tok);
  if (v > u128{~std::uint64_t{0}}) malformed(std::string(name) + " out of range");
  return static_cast<std::uint64_t>(v);
}

KeyHeader read_header(std::istream& is, const char* role) {
  if (next_token(is, "magic") != kMagic) malformed("bad magic");
  expect(is, "role");
  const std::string got = next_token(is, "role tag");
  if (got != role) malformed(std::string("expected role ") + role + ", found " + got);
  KeyHeader h;
  h.q = read_number(is, "q");
  h.m = static_cast<int>(read_number(is, "m"));
  h.version = static_cast<int>(read_number(is, "version"));
  try {
    validate_parameters(h.q, h.m, h.version);
  } catch (const Error& e) {
    malformed(std::string("header rejected: ") + e.what());
  }
  return h;
}

MatrixFq read_named(std::istream& is, const char* name, const PrimeField& f, Index rows, Index cols) {
  expect(is, name);
  MatrixFq mat = read_matrix(is, f);
  if (mat.rows() != rows || mat.cols() != cols) malformed(std::string(name) + " has the wrong shape");
  return mat;
}

void write_named(std::ostream& os, const char* name, const MatrixFq& m) {
  os << name << "\n";
  write_text(os, m);
}

Index n_plus_one(int m) { return veronese_last_index(m) + 1; }
Index sigma_cols(int m) { return static_cast<Index>((m + 1) * (m + 1)); }

KeyHeader header_of(const PrimeField& f, int m, int version) { return {f.modulus(), m, version}; }

}  // namespace

void write_public(std::ostream& os, const PublicBundle& pub) {
  write_header(os, "public", header_of(pub.field, pub.m, pub.version));
  write_named(os, "a1", pub.a1);
  write_named(os, "a2", pub.a2);
  write_named(os, "sigma", pub.sigma_p);
  write_named(os, "h", pub.h);
}

PublicBundle read_public(std::istream& is) {
  const KeyHeader h = read_header(is, "public");
  const PrimeField f(h.q);
  const Index n = n_plus_one(h.m);
  MatrixFq a1 = read_named(is, "a1", f, n, n);
  MatrixFq a2 = read_named(is, "a2", f, n, n);
  MatrixFq sigma = read_named(is, "sigma", f, n, sigma_cols(h.m));
  MatrixFq hv = read_named(is, "h", f, 1, n);
  if (hv.is_zero()) malformed("zero hyperplane");
  if (h.version == 2 && (!GenPerm::from_dense(a1) || !GenPerm::from_dense(a2)))
    malformed("version-2 automorphisms must be generalized permutations");
  return {f, h.m, h.version, std::move(a1), std::move(a2), std::move(sigma), std::move(hv)};
}

void write_secret(std::ostream& os, const SecretKey& sec) {
  write_header(os, "secret", header_of(sec.field, sec.m, sec.version));
  write_named(os, "sigma", sec.sigma_s);
  write_named(os, "frame", sec.frame);
}

SecretKey read_secret(std::istream& is) {
  const KeyHeader h = read_header(is, "secret");
  const PrimeField f(h.q);
  const Index n = n_plus_one(h.m);
  MatrixFq sigma = read_named(is, "sigma", f, n, sigma_cols(h.m));
  MatrixFq frame = read_named(is, "frame", f, n, n);
  return {f, h.m, h.version, std::move(sigma), std::move(frame)};
}

void write_message(std::ostream& os, const KeyHeader& header, const ResponderMessage& msg) {
  write_header(os, "message", header);
  write_named(os, "h", msg.h);
}

std::pair<KeyHeader, ResponderMessage> read_message(std::istream& is) {
  const KeyHeader h = read_header(is, "message");
  MatrixFq hv = read_named(is, "h", PrimeField(h.q), 1, n_plus_one(h.m));
  if (hv.is_zero()) malformed("zero hyperplane");
  return {h, ResponderMessage{std::move(hv)}};
}

void write_shared(std::ostream& os, const KeyHeader& header, const SharedKey& key) {
  write_header(os, "key", header);
  os << "j " << key.j.value() << "\n";
}

std::pair<KeyHeader, SharedKey> read_shared(std::istream& is) {
  const KeyHeader h = read_header(is, "key");
  const std::uint64_t j = read_number(is, "j");
  if (j >= h.q) malformed("j out of range");
  return {h, SharedKey{Fq(PrimeField(h.q), j)}};
}

void write_ttp(std::ostream& os, const TTPParams& params) {
  write_header(os, "ttp", header_of(params.field, params.m, 1));
  write_named(os, "sigma", params.sigma_t);
  write_named(os, "t1", params.t1);
  write_named(os, "t2", params.t2);
}

TTPParams read_ttp(std::istream& is) {
  const KeyHeader h = read_header(is, "ttp");
  const PrimeField f(h.q);
  const Index n = n_plus_one(h.m);
  MatrixFq sigma = read_named(is, "sigma", f, n, sigma_cols(h.m));
  MatrixFq t1 = read_named(is, "t1", f, n, n);
  MatrixFq t2 = read_named(is, "t2", f, n, n);
  return {f, h.m, std::move(sigma), std::move(t1), std::move(t2)};
}

void write_user(std::ostream& os, const TTPParams& params, const TTPUser& user) {
  write_header(os, "user", header_of(params.field, params.m, 1));
  os << "word";
  for (auto e : user.word) os << ' ' << to_string(e);
  os << "\n";
  write_named(os, "sigma", user.sigma);
  write_named(os, "h", user.h);
}

TTPUser read_user(std::istream& is, const TTPParams& params) {
  const KeyHeader h = read_header(is, "user");
  if (h.q != params.field.modulus() || h.m != params.m) malformed("user file does not match the TTP parameters");
  expect(is, "word");
  ExponentWord w{};
  for (auto& e : w) e = parse_u128(next_token(is, "exponent"));
  const Index n = n_plus_one(h.m);
  MatrixFq sigma = read_named(is, "sigma", params.field, n, sigma_cols(h.m));
  MatrixFq hv = read_named(is, "h", params.field, 1, n);
  return {w, std::move(sigma), std::move(hv)};
}

std::string peek_role(std::istream& is) {
  const auto pos = is.tellg();
  std::string magic, role_kw, role;
  is >> magic >> role_kw >> role;
  is.clear();
  is.seekg(pos);
  if (magic != kMagic || role_kw != "role") malformed("not a key file");
  return role;
}

}  // namespace qsi
