#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qsi/protocol.hpp"

namespace qsi {

/// The reference exchange over F_67 with m = 3: one automorphism, exponent 70.
struct ToyExample {
  PrimeField field;
  int m;
  u128 exponent;
  std::uint64_t expected_j;
  MatrixFq frame;
  MatrixFq automorphism;
  MatrixFq secret;
  MatrixFq public_sigma;
  MatrixFq responder_sigma;
  RowVector hyperplane;
  BiForm responder_pullback;
  BiForm responder_component;
  BiForm initiator_pullback;
  BiForm initiator_component;
};

/// Parses the golden file format (see data/toy_example.txt). Throws MalformedInput.
ToyExample parse_toy(std::istream& is);
/// The copy compiled into the library.
const ToyExample& toy_example();

struct ToyReport {
  bool responder_sigma_matches = false;     // A1^70 * public == printed responder
  bool responder_pullback_matches = false;  // H_A * responder == printed form up to a scalar
  bool component_matches = false;           // extracted component == printed C1 up to a scalar
  bool hyperplane_annihilates_secret = false;
  bool initiator_component_divides = false;  // printed C2 divides the printed initiator pullback
  std::uint64_t j_responder = 0;             // via the protocol's responder flow
  std::uint64_t j_initiator = 0;             // accept with a regenerated H_B
  std::uint64_t j_printed_c1 = 0;
  std::uint64_t j_printed_c2 = 0;
  std::uint64_t j_printed_responder_pullback = 0;
  std::uint64_t j_printed_initiator_pullback = 0;
  std::vector<std::string> notes;

  bool agree() const;
};

/// Replays the exchange; the seed only picks the regenerated responder hyperplane.
ToyReport verify_toy_example(std::uint64_t seed = 0);

}  // namespace qsi
