#include "doctest.h"

#include <sstream>

#include "qsi/error.hpp"
#include "qsi/linalg.hpp"

using namespace qsi;

TEST_CASE("inverse and rank over F_67") {
  PrimeField f(67);
  auto a = MatrixFq::from_rows(f, {{1, 2}, {3, 4}});
  auto ai = inverse(a);
  CHECK(a * ai == MatrixFq::identity(f, 2));
  CHECK(rank(a) == 2);
  // det = -2, so [[4,-2],[-3,1]] / -2 = [[-2,1],[3/2,-1/2]]
  CHECK(ai == MatrixFq::from_rows(f, {{-2, 1}, {35, 33}}));
  auto s = MatrixFq::from_rows(f, {{1, 2}, {2, 4}});
  CHECK(rank(s) == 1);
  CHECK_THROWS_WITH_AS(inverse(s), doctest::Contains("SingularMatrix"), Error);
}

TEST_CASE("left nullspace is canonical and annihilates") {
  PrimeField f(101);
  Stream rng(1, "linalg.null");
  for (int trial = 0; trial < 20; ++trial) {
    Index rows = 6 + static_cast<Index>(rng.uniform(6));
    Index cols = 1 + static_cast<Index>(rng.uniform(5));
    auto m = MatrixFq::random(f, rows, cols, rng);
    auto basis = left_nullspace(m);
    CHECK(static_cast<Index>(basis.size()) == rows - rank(m));
    for (const auto& h : basis) CHECK((h * m).is_zero());
    // Column operations do not change the left nullspace.
    auto g = MatrixFq::random_invertible(f, cols, rng);
    CHECK(left_nullspace_matrix(m * g) == left_nullspace_matrix(m));
    auto h = random_cokernel_element(m, rng);
    CHECK((h * m).is_zero());
    CHECK_FALSE(h.is_zero());
  }
}

TEST_CASE("trivial cokernel") {
  PrimeField f(5);
  auto id = MatrixFq::identity(f, 3);
  Stream rng(2, "linalg.coker");
  CHECK(left_nullspace(id).empty());
  CHECK_THROWS_WITH_AS(random_cokernel_element(id, rng), doctest::Contains("DegenerateChoice"), Error);
}

TEST_CASE("dimension checks") {
  PrimeField f(7);
  MatrixFq a(f, 2, 3), b(f, 2, 3);
  CHECK_THROWS_WITH_AS(a * b, doctest::Contains("DimensionMismatch"), Error);
  MatrixFq c(PrimeField(11), 2, 3);
  CHECK_THROWS_WITH_AS(a + c, doctest::Contains("ModulusMismatch"), Error);
}

TEST_CASE("products with large moduli") {
  PrimeField f(4611686018427387847ULL);
  Stream rng(3, "linalg.big");
  auto a = MatrixFq::random_invertible(f, 12, rng);
  CHECK(a * inverse(a) == MatrixFq::identity(f, 12));
  auto b = MatrixFq::random(f, 12, 20, rng);
  auto c = MatrixFq::random(f, 20, 5, rng);
  CHECK((a * b) * c == a * (b * c));
}

TEST_CASE("matrix powers") {
  PrimeField f(67);
  auto a = MatrixFq::from_rows(f, {{0, 1}, {1, 1}});
  CHECK(pow(a, 0) == MatrixFq::identity(f, 2));
  CHECK(pow(a, 10)(0, 1) == 55);  // Fibonacci
  CHECK(pow(a, 5) * pow(a, 7) == pow(a, 12));
}

TEST_CASE("generalized permutations") {
  PrimeField f(31);
  Stream rng(4, "linalg.genperm");
  auto g = GenPerm::random(f, 7, rng);
  auto h = GenPerm::random(f, 7, rng);
  CHECK((g * h).dense() == g.dense() * h.dense());
  CHECK((g * g.inverse()) == GenPerm::identity(f, 7));
  auto m = MatrixFq::random(f, 7, 7, rng);
  CHECK(g * m == g.dense() * m);
  CHECK(m * g == m * g.dense());
  auto back = GenPerm::from_dense(g.dense());
  REQUIRE(back.has_value());
  CHECK(*back == g);
  CHECK_FALSE(GenPerm::from_dense(m).has_value());
  auto ord = g.order();
  CHECK(pow(g, ord) == GenPerm::identity(f, 7));
  CHECK(pow(g.dense(), ord) == MatrixFq::identity(f, 7));
  for (auto [p, e] : factorize(ord)) CHECK_FALSE(pow(g, ord / p) == GenPerm::identity(f, 7));
}

TEST_CASE("text round trip") {
  PrimeField f(67);
  Stream rng(5, "linalg.text");
  auto m = MatrixFq::random(f, 3, 4, rng);
  std::stringstream ss;
  write_text(ss, m);
  CHECK(read_matrix(ss, f) == m);
  std::istringstream bad("2 2\n1 2\n3");
  CHECK_THROWS_WITH_AS(read_matrix(bad, f), doctest::Contains("MalformedInput"), Error);
  std::istringstream range("1 1\n67\n");
  CHECK_THROWS_WITH_AS(read_matrix(range, f), doctest::Contains("MalformedInput"), Error);
}
