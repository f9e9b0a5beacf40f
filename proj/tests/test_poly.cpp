#include "doctest.h"

#include "qsi/error.hpp"
#include "qsi/poly.hpp"

using namespace qsi;

namespace {

UniPoly expand(const UniFactorization& fac, const PrimeField& f) {
  UniPoly out = UniPoly::constant(f, fac.leading);
  for (const auto& [g, e] : fac.factors)
    for (unsigned k = 0; k < e; ++k) out = out * g;
  return out;
}

}  // namespace

TEST_CASE("x^2 + 1 splits over F_5") {
  PrimeField f(5);
  auto p = UniPoly::from_signed(f, {1, 0, 1});
  auto fac = factor(p);
  REQUIRE(fac.factors.size() == 2);
  // (x - 2)(x + 2), sorted by coefficients from the top: x + 2 before x + 3
  CHECK(fac.factors[0].first == UniPoly::from_signed(f, {2, 1}));
  CHECK(fac.factors[1].first == UniPoly::from_signed(f, {-2, 1}));
  CHECK(fac.leading == 1);
}

TEST_CASE("x^2 + x + 1 is irreducible over F_5") {
  PrimeField f(5);
  auto p = UniPoly::from_signed(f, {1, 1, 1});
  CHECK(is_irreducible(p));
  auto fac = factor(p);
  REQUIRE(fac.factors.size() == 1);
  CHECK(fac.factors[0].second == 1);
}

TEST_CASE("division and gcd") {
  PrimeField f(67);
  Stream rng(1, "poly.gcd");
  for (int t = 0; t < 50; ++t) {
    auto a = UniPoly::random(f, 8, rng), b = UniPoly::random(f, 5, rng), c = UniPoly::random(f, 3, rng);
    if (b.is_zero() || c.is_zero()) continue;
    auto [q, r] = divmod(a, b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
    auto g = gcd(a * c, b * c);
    CHECK((g % c.monic()).is_zero());
    auto eg = extended_gcd(a, b);
    CHECK(eg.s * a + eg.t * b == eg.g);
  }
  CHECK_THROWS_WITH_AS(divmod(UniPoly::constant(f, 1), UniPoly(f)), doctest::Contains("DivisionByZero"), Error);
}

TEST_CASE("factorization reproduces its input") {
  for (std::uint64_t q : {5ULL, 7ULL, 67ULL, 1009ULL}) {
    PrimeField f(q);
    Stream rng(q, "poly.factor");
    for (int t = 0; t < 30; ++t) {
      auto a = UniPoly::random(f, 6, rng);
      auto b = UniPoly::random(f, 3, rng);
      if (a.is_zero() || b.is_zero()) continue;
      auto p = a * b * b;  // force repeated factors
      auto fac = factor(p, rng);
      CHECK(expand(fac, f) == p);
      for (const auto& [g, e] : fac.factors) {
        CHECK(g.lead() == 1);
        CHECK(is_irreducible(g));
      }
    }
  }
}

TEST_CASE("p-th powers factor") {
  PrimeField f(5);
  // (x + 1)^5 (x^2 + x + 1)^10
  auto lin = UniPoly::from_signed(f, {1, 1});
  auto quad = UniPoly::from_signed(f, {1, 1, 1});
  UniPoly p = UniPoly::constant(f, 3);
  for (int i = 0; i < 5; ++i) p = p * lin;
  for (int i = 0; i < 10; ++i) p = p * quad;
  auto fac = factor(p);
  REQUIRE(fac.factors.size() == 2);
  CHECK(fac.leading == 3);
  CHECK(fac.factors[0] == std::pair<UniPoly, unsigned>{lin, 5});
  CHECK(fac.factors[1] == std::pair<UniPoly, unsigned>{quad, 10});
}

TEST_CASE("zero polynomial") {
  PrimeField f(7);
  CHECK_THROWS_WITH_AS(factor(UniPoly(f)), doctest::Contains("ZeroPolynomial"), Error);
}
