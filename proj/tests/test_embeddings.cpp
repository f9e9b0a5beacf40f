#include "doctest.h"

#include "qsi/embeddings.hpp"
#include "qsi/error.hpp"

using namespace qsi;

namespace {

std::vector<Residue> act(const MatrixFq& a, const std::vector<Residue>& p) {
  const PrimeField& f = a.field();
  std::vector<Residue> out(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      out[i] = f.add(out[i], f.mul(a(static_cast<Index>(i), static_cast<Index>(j)), p[j]));
  return out;
}

}  // namespace

TEST_CASE("glemb is the Veronese action") {
  PrimeField f(67);
  Stream rng(1, "emb.glemb");
  for (int m : {1, 2, 3}) {
    auto a = MatrixFq::random_invertible(f, 4, rng);
    auto b = MatrixFq::random_invertible(f, 4, rng);
    auto ga = glemb(a, m);
    CHECK(ga.rows() == veronese_last_index(m) + 1);
    CHECK(glemb(a * b, m) == ga * glemb(b, m));
    CHECK(glemb(MatrixFq::identity(f, 4), m) == MatrixFq::identity(f, ga.rows()));
    std::vector<Residue> p{f.random(rng), f.random(rng), f.random(rng), f.random(rng)};
    auto ap = act(a, p);
    CHECK(ga * veronese_point(f, m, p) == veronese_point(f, m, ap));
  }
  CHECK(veronese_last_index(8) == 164);
  auto singular = MatrixFq(f, 4, 4);
  CHECK_THROWS_WITH_AS(glemb(singular, 2), doctest::Contains("SingularMatrix"), Error);
}

TEST_CASE("sparse glemb matches dense glemb") {
  PrimeField f(31);
  Stream rng(2, "emb.sparse");
  auto g = GenPerm::random(f, 4, rng);
  CHECK(glemb(g, 3).dense() == glemb(g.dense(), 3));
}

TEST_CASE("sigma embedding lands on the framed variety") {
  PrimeField f(67);
  Stream rng(3, "emb.sigma");
  const int m = 3;
  auto frame = VeroneseFrame::random(f, m, rng);
  auto b = MatrixFq::random_invertible(f, 4, rng);
  auto sigma = sigma_compose(frame, b);
  CHECK(sigma.matrix().rows() == 20);
  CHECK(sigma.matrix().cols() == 16);
  CHECK(sigma.has_full_column_rank());
  Point1 p{3, 5}, q{7, 11};
  std::vector<Residue> z{f.mul(p.x0, q.x0), f.mul(p.x0, q.x1), f.mul(p.x1, q.x0), f.mul(p.x1, q.x1)};
  auto bz = act(b, z);
  CHECK(sigma.point(p, q) == frame.point(bz));
}

TEST_CASE("companion matrices and primitive quartics") {
  PrimeField f(67);
  Stream rng(4, "emb.quartic");
  auto poly = random_primitive_quartic(f, rng);
  CHECK(poly.degree() == 4);
  auto c = companion_matrix(poly);
  auto primes = prime_divisors_q4_minus_1(67);
  CHECK(has_exact_order(c, 20151120, primes));
  // x^4 - 1 is far from primitive
  auto bad = UniPoly::from_signed(f, {-1, 0, 0, 0, 1});
  CHECK_FALSE(is_primitive_quartic(bad, primes));
}

TEST_CASE("automorphisms preserve the variety") {
  PrimeField f(67);
  Stream rng(5, "emb.auto");
  const int m = 3;
  auto frame = VeroneseFrame::random(f, m, rng);
  auto key = gen_automorphism_pair(frame, rng);
  std::vector<Residue> p{1, 2, 3, 4};
  // A_i * (M_U v(P)) = M_U v(U_i' P)
  auto u1p = act(key.u1, p), u2p = act(key.u2, p);
  CHECK(key.a1 * frame.point(p) == frame.point(u1p));
  CHECK(key.a2 * frame.point(p) == frame.point(u2p));
  CHECK(key.generator_order1 == 20151120);
}

TEST_CASE("generalized permutation variant") {
  PrimeField f(67);
  Stream rng(6, "emb.perm");
  const int m = 3;
  auto frame = VeroneseFrame::random_generalized_permutation(f, m, rng);
  auto key = gen_permutation_variant(frame, rng);
  CHECK(key.version == 2);
  CHECK(key.generator_order1 == 4 * 66);
  CHECK(key.generator_order2 == 4 * 66);
  auto a1 = GenPerm::from_dense(key.a1);
  REQUIRE(a1.has_value());
  CHECK(4 * 66 % a1->order() == 0);
  std::vector<Residue> p{1, 2, 3, 4};
  auto u1p = act(key.u1, p);
  CHECK(key.a1 * frame.point(p) == frame.point(u1p));
  auto dense_frame = VeroneseFrame::random(f, m, rng);
  CHECK_THROWS_WITH_AS(gen_permutation_variant(dense_frame, rng), doctest::Contains("InvalidParameters"), Error);
}
