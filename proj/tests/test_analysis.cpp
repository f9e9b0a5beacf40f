#include "doctest.h"

#include "qsi/analysis.hpp"
#include "qsi/error.hpp"

using namespace qsi;

TEST_CASE("quadric counts") {
  CHECK(expected_quadric_count(2) == 20);
  CHECK(expected_quadric_count(3) == 126);
  CHECK(expected_quadric_count(8) == 12726);
  for (int m = 2; m <= 10; ++m) CHECK(printed_closed_form(m) == 72 * expected_quadric_count(m));
  CHECK(surface_quadric_count(3) == 210 - 49);
}

TEST_CASE("degree report") {
  CHECK(degree_report(1).variety == 1);
  CHECK(degree_report(1).component == 4);
  CHECK(degree_report(3).variety == 27);
  CHECK(degree_report(3).component == 12);
  CHECK(degree_report(8).variety == 512);
  CHECK(degree_report(8).component == 32);
}

TEST_CASE("quadric systems vanish on fresh points") {
  PrimeField f(101);
  for (int m : {2, 3}) {
    Stream rng(static_cast<std::uint64_t>(m), "analysis.quadrics");
    auto frame = VeroneseFrame::random(f, m, rng);
    auto sys = quadric_system(frame, rng);
    CHECK(static_cast<std::uint64_t>(sys.basis.rows()) == expected_quadric_count(m));
    for (int t = 0; t < 50; ++t) {
      std::vector<Residue> p{f.random(rng), f.random(rng), f.random(rng), 1};
      auto x = frame.point(p);
      for (Index r = 0; r < sys.basis.rows(); r += 7) CHECK(evaluate_quadric(sys, r, x) == 0);
    }
    // a random point of P^N is off the variety
    auto y = MatrixFq::random(f, frame.matrix().rows(), 1, rng);
    bool some_nonzero = false;
    for (Index r = 0; r < sys.basis.rows(); ++r) some_nonzero |= evaluate_quadric(sys, r, y) != 0;
    CHECK(some_nonzero);
  }
}

TEST_CASE("public orbit recovers the secret ideal") {
  PrimeField f(101);
  Stream rng(3, "analysis.orbit");
  auto frame = VeroneseFrame::random(f, 3, rng);
  auto aut = gen_automorphism_pair(frame, rng);
  auto sigma = sigma_compose(frame, MatrixFq::random_invertible(f, 4, rng));
  auto from_variety = quadric_system(frame, rng);
  auto from_orbit = quadric_system(aut.a1, aut.a2, sigma, rng);
  CHECK(from_orbit.basis == from_variety.basis);
  auto surface = quadric_system(sigma, rng);
  CHECK(static_cast<std::uint64_t>(surface.basis.rows()) == surface_quadric_count(3));
}

TEST_CASE("brute force on a planted instance") {
  auto setup = ttp_setup(5, 3, 1);
  auto user = ttp_register(setup.params, 0);
  auto target = brute_force_target(setup.params, user.h);
  auto none = brute_force_search(target, 0, 1);
  CHECK_FALSE(none.word.has_value());
  CHECK(none.trials == 0);
  auto hit = brute_force_search(target, 10 * 1953125ULL, 0);
  REQUIRE(hit.word.has_value());
  const auto& w = *hit.word;
  auto sigma = pow(setup.params.t1, w[0]) * pow(setup.params.t2, w[1]) * pow(setup.params.t1, w[2]) *
               pow(setup.params.t2, w[3]) * setup.params.sigma_t;
  CHECK((user.h * sigma).is_zero());
  // thread count does not change the answer
  auto parallel = brute_force_search(target, 10 * 1953125ULL, 0, 4);
  CHECK(parallel.word == hit.word);
  CHECK(parallel.trials == hit.trials);
}
