#include "doctest.h"

#include "qsi/error.hpp"
#include "qsi/protocol.hpp"

using namespace qsi;

TEST_CASE("keygen invariants") {
  auto kp = keygen_user(67, 3, 1, 5);
  CHECK((kp.pub.h * kp.sec.sigma_s).is_zero());
  CHECK_FALSE(kp.pub.h.is_zero());
  CHECK(rank(kp.sec.sigma_s) == 16);
  CHECK(rank(kp.pub.sigma_p) == 16);
  CHECK(rank(hstack(kp.sec.sigma_s, kp.pub.sigma_p)) > 16);
  CHECK(kp.pub.a1.rows() == 20);
  // same seed, same keys
  auto again = keygen_user(67, 3, 1, 5);
  CHECK(again.pub.sigma_p == kp.pub.sigma_p);
  CHECK(again.pub.h == kp.pub.h);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_WITH_AS(keygen_user(67, 4, 1, 1), doctest::Contains("InvalidParameters"), Error);
  CHECK_THROWS_WITH_AS(keygen_user(67, 2, 1, 1), doctest::Contains("InvalidParameters"), Error);
  CHECK_THROWS_WITH_AS(keygen_user(67, 3, 3, 1), doctest::Contains("InvalidParameters"), Error);
  CHECK_THROWS_WITH_AS(keygen_user(69, 3, 1, 1), doctest::Contains("InvalidModulus"), Error);
  CHECK_THROWS_WITH_AS(keygen_user(4294967311ULL, 3, 1, 1), doctest::Contains("InvalidParameters"), Error);
}

TEST_CASE("automorphism order at q = 5 by brute force") {
  // glemb kills scalars up to m-th roots of unity: ord(A1) = 156 * 4 / gcd(3, 4) = 624
  auto kp = keygen_user(5, 3, 1, 2);
  const auto id = MatrixFq::identity(kp.pub.field, kp.pub.a1.rows());
  MatrixFq power = kp.pub.a1;
  int order = 1;
  while (!(power == id) && order <= 700) {
    power = power * kp.pub.a1;
    ++order;
  }
  CHECK(order == 624);
}

TEST_CASE("identity word responds with the public embedding") {
  auto kp = keygen_user(101, 3, 1, 9);
  auto r = respond_with_word(kp.pub, ExponentWord{0, 0, 0, 0}, 4);
  CHECK(r.sigma_b == kp.pub.sigma_p);
  Stream rng(0, "check");
  CHECK(r.key.j == component_and_j(kp.pub.h, kp.pub.sigma_p, 3, rng).second);
  CHECK(accept(kp.sec, r.msg).j == r.key.j);
}

TEST_CASE("end-to-end agreement") {
  for (int m : {3, 5}) {
    for (std::uint64_t seed = 0; seed < (m == 3 ? 20u : 5u); ++seed) {
      auto kp = keygen_user(101, m, 1, seed);
      auto r = respond(kp.pub, seed + 100);
      CHECK((r.msg.h * r.sigma_b).is_zero());
      CHECK(accept(kp.sec, r.msg).j == r.key.j);
    }
  }
}

TEST_CASE("self-annihilating hyperplane gives no component") {
  auto kp = keygen_user(101, 3, 1, 3);
  ResponderMessage msg{left_nullspace(kp.sec.sigma_s).front()};
  CHECK_THROWS_WITH_AS(accept(kp.sec, msg), doctest::Contains("NoComponent"), Error);
}

TEST_CASE("version 2 publishes generalized permutations") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto kp = keygen_user(101, 3, 2, seed);
    auto g1 = GenPerm::from_dense(kp.pub.a1), g2 = GenPerm::from_dense(kp.pub.a2);
    REQUIRE(g1.has_value());
    REQUIRE(g2.has_value());
    CHECK(g1->order() <= 400);
    CHECK(g2->order() <= 400);
    auto r = respond(kp.pub, seed);
    CHECK(r.diagnostics.word[0] < 400);
    // the sparse path agrees with dense powering
    CHECK(apply_word(kp.pub, r.diagnostics.word, kp.pub.sigma_p) ==
          pow(kp.pub.a1, r.diagnostics.word[0]) * pow(kp.pub.a2, r.diagnostics.word[1]) *
              pow(kp.pub.a1, r.diagnostics.word[2]) * pow(kp.pub.a2, r.diagnostics.word[3]) * kp.pub.sigma_p);
    CHECK(accept(kp.sec, r.msg).j == r.key.j);
  }
}

TEST_CASE("trusted third party") {
  auto setup = ttp_setup(101, 3, 1);
  auto zero = ttp_register_with_word(setup.params, ExponentWord{0, 0, 0, 0}, 1);
  CHECK(zero.sigma == setup.params.sigma_t);
  int agreed = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto a = ttp_register(setup.params, 2 * s), b = ttp_register(setup.params, 2 * s + 1);
    for (auto e : a.word) CHECK(e >= 1);
    CHECK((a.h * a.sigma).is_zero());
    try {
      auto ja = ttp_shared(setup.params, a, b.h).j;
      CHECK(ttp_shared(setup.params, b, a.h).j == ja);
      ++agreed;
    } catch (const Error& e) {
      CHECK_THROWS_WITH_AS(ttp_shared(setup.params, b, a.h), doctest::Contains(std::string(token(e.kind())).c_str()), Error);
    }
  }
  CHECK(agreed >= 8);
}

TEST_CASE("sparse hyperplanes and key sizes") {
  auto setup = ttp_setup(101, 3, 2);
  auto u = ttp_register(setup.params, 5, true);
  int zeros = 0, ones = 0;
  for (Index i = 0; i < u.h.cols(); ++i) {
    zeros += u.h(0, i) == 0;
    ones += u.h(0, i) == 1;
  }
  // C(6,3) - 16 - 1 = 3 forced zeros and one forced 1
  CHECK(zeros >= 3);
  CHECK(ones >= 1);
  CHECK(public_key_bits(8, 64) == 5184);
  CHECK(public_matrix_bits(8, 64) == 855360);
  CHECK(dense_hyperplane_bits(8, 64) == 10560);
  CHECK(bit_length(101) == 7);
}
