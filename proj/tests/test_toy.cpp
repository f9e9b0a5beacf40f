#include "doctest.h"

#include <sstream>

#include "qsi/error.hpp"
#include "qsi/jinv.hpp"
#include "qsi/toy.hpp"

using namespace qsi;

TEST_CASE("toy example parses") {
  const auto& t = toy_example();
  CHECK(t.field.modulus() == 67);
  CHECK(t.m == 3);
  CHECK(t.exponent == 70);
  CHECK(t.expected_j == 57);
  CHECK(t.frame.rows() == 20);
  CHECK(t.secret.cols() == 16);
  CHECK(t.hyperplane.cols() == 20);
}

TEST_CASE("toy exchange replays") {
  const ToyReport r = verify_toy_example();
  for (const auto& n : r.notes) MESSAGE(n);
  CHECK(r.j_printed_c1 == 57);
  CHECK(r.j_printed_c2 == 57);
  CHECK(r.hyperplane_annihilates_secret);
  CHECK(r.j_responder == 57);
  CHECK(r.j_initiator == 57);
  CHECK(r.agree());
  CHECK(r.j_printed_responder_pullback == 57);
  CHECK(r.j_printed_initiator_pullback == 57);
  CHECK(r.initiator_component_divides);
  // diagnostics only: see the notes above
  MESSAGE("sigma matches: " << r.responder_sigma_matches << ", pullback matches: " << r.responder_pullback_matches
                            << ", component matches: " << r.component_matches);
}

TEST_CASE("toy parser rejects truncated input") {
  std::istringstream missing("q 67\nm 3\nexponent 70\n");
  CHECK_THROWS_WITH_AS(parse_toy(missing), doctest::Contains("MalformedInput"), Error);
  std::istringstream early("matrix frame\n1 1\n1\n");
  CHECK_THROWS_WITH_AS(parse_toy(early), doctest::Contains("MalformedInput"), Error);
}
