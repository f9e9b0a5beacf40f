#pragma once

#include <iosfwd>
#include <string>
#include <utility>

#include "qsi/protocol.hpp"

namespace qsi {

/// Text key files: a "QSI1" line, "role <tag>", "q", "m" and "version" lines, then
/// named entries ("name" line followed by a matrix in linalg text format, or
/// "name value" for scalars). Decoders throw MalformedInput on any deviation,
/// including non-prime q, q divisible by 2 or 3, and m = 4.
struct KeyHeader {
  std::uint64_t q = 0;
  int m = 0;
  int version = 1;
};

void write_public(std::ostream& os, const PublicBundle& pub);
PublicBundle read_public(std::istream& is);

void write_secret(std::ostream& os, const SecretKey& sec);
SecretKey read_secret(std::istream& is);

void write_message(std::ostream& os, const KeyHeader& header, const ResponderMessage& msg);
std::pair<KeyHeader, ResponderMessage> read_message(std::istream& is);

void write_shared(std::ostream& os, const KeyHeader& header, const SharedKey& key);
std::pair<KeyHeader, SharedKey> read_shared(std::istream& is);

void write_ttp(std::ostream& os, const TTPParams& params);
TTPParams read_ttp(std::istream& is);

void write_user(std::ostream& os, const TTPParams& params, const TTPUser& user);
TTPUser read_user(std::istream& is, const TTPParams& params);

/// The role tag of a key file without consuming the stream.
std::string peek_role(std::istream& is);

}  // namespace qsi
