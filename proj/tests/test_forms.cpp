#include "doctest.h"

#include <sstream>

#include "qsi/error.hpp"
#include "qsi/forms.hpp"

using namespace qsi;

TEST_CASE("monomial basis order and ranks") {
  MonomialBasis b(4, 3);
  CHECK(b.size() == 20);
  auto first = b.exponents(0);
  CHECK(std::vector<int>(first.begin(), first.end()) == std::vector<int>{3, 0, 0, 0});
  auto second = b.exponents(1);
  CHECK(std::vector<int>(second.begin(), second.end()) == std::vector<int>{2, 1, 0, 0});
  auto last = b.exponents(19);
  CHECK(std::vector<int>(last.begin(), last.end()) == std::vector<int>{0, 0, 0, 3});
  for (Index i = 0; i < b.size(); ++i) CHECK(b.index_of(b.exponents(i)) == i);
  // strictly descending lex
  for (Index i = 1; i < b.size(); ++i) {
    auto p = b.exponents(i - 1), c = b.exponents(i);
    CHECK(std::lexicographical_compare(c.begin(), c.end(), p.begin(), p.end()));
  }
  CHECK(MonomialBasis(4, 8).size() == 165);
  CHECK(binomial(11, 3) == 165);
}

TEST_CASE("expansion matrix maps Veronese points to bidegree monomials") {
  PrimeField f(67);
  const int m = 3;
  auto e = expansion_matrix(m, f);
  CHECK(e.rows() == 20);
  CHECK(e.cols() == 16);
  // every column is hit; every row has exactly one 1
  for (Index r = 0; r < e.rows(); ++r) {
    int ones = 0;
    for (Index c = 0; c < e.cols(); ++c) ones += e(r, c) == 1;
    CHECK(ones == 1);
  }
  Stream rng(1, "forms.expansion");
  MonomialBasis basis(4, m);
  for (int t = 0; t < 10; ++t) {
    Point1 p{f.random(rng), f.random(rng)}, q{f.random(rng), f.random(rng)};
    std::vector<Residue> z{f.mul(p.x0, q.x0), f.mul(p.x0, q.x1), f.mul(p.x1, q.x0), f.mul(p.x1, q.x1)};
    auto vz = basis.evaluate(f, z);
    auto b = e * bidegree_monomials(f, m, p, q);
    for (Index r = 0; r < e.rows(); ++r) CHECK(b(r, 0) == vz[static_cast<std::size_t>(r)]);
  }
}

TEST_CASE("pullback agrees with evaluation") {
  PrimeField f(101);
  Stream rng(2, "forms.pullback");
  const int m = 2;
  auto sigma = MatrixFq::random(f, 10, 9, rng);
  auto h = MatrixFq::random(f, 1, 10, rng);
  auto form = pullback(h, sigma, m);
  CHECK(form.d1() == m);
  CHECK(form.d2() == m);
  for (int t = 0; t < 10; ++t) {
    Point1 p{f.random(rng), f.random(rng)}, q{f.random(rng), f.random(rng)};
    CHECK(eval(form, p, q) == (h * sigma * bidegree_monomials(f, m, p, q))(0, 0));
  }
}

TEST_CASE("form arithmetic") {
  PrimeField f(5);
  // (X0 Y0 + X1 Y1) * (X0 Y1 - X1 Y0)
  BiForm a(f, 1, 1, {1, 0, 0, 1});
  BiForm b(f, 1, 1, {0, 1, 4, 0});
  auto c = a * b;
  CHECK(c.d1() == 2);
  // X0^2 Y0 Y1 - X0 X1 Y0^2 + X0 X1 Y1^2 - X1^2 Y0 Y1
  CHECK(c.coeffs() == std::vector<Residue>{0, 1, 0, 4, 0, 1, 0, 4, 0});
  CHECK(same_up_to_scalar(c, c.scaled(3)));
  CHECK(c.scaled(3).normalized().is_normalized());
  CHECK(c.swapped().swapped() == c);
  CHECK((c - c).is_zero());
  CHECK_THROWS_WITH_AS(a + c, doctest::Contains("DimensionMismatch"), Error);
}

TEST_CASE("form text round trip") {
  PrimeField f(67);
  Stream rng(3, "forms.text");
  auto g = BiForm::random(f, 2, 3, rng);
  std::stringstream ss;
  write_text(ss, g);
  CHECK(read_biform(ss, f) == g);
}
