// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "qsi/analysis.hpp"
#include "qsi/error.hpp"
#include "qsi/factor.hpp"
#include "qsi/jinv.hpp"
#include "qsi/simulate.hpp"
#include "qsi/toy.hpp"

using namespace qsi;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

// Runs one criterion; the body fills `detail` and returns the verdict.
void criterion(const char* name, const std::function<bool(std::ostringstream&)>& body) {
  std::ostringstream detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail << " unexpected exception: " << e.what();
  }
  failures += !ok;
  std::printf("%s %s:%s\n", ok ? "PASS" : "FAIL", name, detail.str().c_str());
  std::fflush(stdout);
}

bool has_repeated_root(const BranchQuartic& g) {
  UniPoly p(g.field, {g.q[4], g.q[3], g.q[2], g.q[1], g.q[0]});
  if (p.is_zero()) return true;
  if (4 - p.degree() >= 2) return true;
  return !gcd(p, p.derivative()).is_one();
}

BiForm random_smooth(const PrimeField& f, Stream& rng) {
  for (;;) {
    auto g = BiForm::random(f, 2, 2, rng);
    if (!g.is_zero() && discriminant_expression(branch_quartic(g)) != 0) return g;
  }
}

BiForm random_irreducible_22(const PrimeField& f, Stream& rng) {
  for (;;) {
    auto c = BiForm::random(f, 2, 2, rng);
    if (!c.is_zero() && factor_biform(c, rng).factors.size() == 1) return c;
  }
}

std::uint64_t brute_order(const MatrixFq& a, std::uint64_t cap) {
  const MatrixFq id = MatrixFq::identity(a.field(), a.rows());
  MatrixFq p = a;
  for (std::uint64_t k = 1; k <= cap; ++k) {
    if (p == id) return k;
    p = p * a;
  }
  return 0;
}

}  // namespace

int main() {
  criterion("toy_example_replay", [](std::ostringstream& d) {
    const auto t0 = Clock::now();
    const ToyReport r = verify_toy_example();
    const double secs = since(t0);
    d << " sigma_B=" << r.responder_sigma_matches << " pullback=" << r.responder_pullback_matches
      << " C1=" << r.component_matches << " j(C1)=" << r.j_printed_c1 << " j(C2)=" << r.j_printed_c2
      << " j_responder=" << r.j_responder << " j_initiator=" << r.j_initiator << " seconds=" << secs;
    const bool printed = r.j_printed_c1 == 57 && r.j_printed_c2 == 57 && r.j_printed_responder_pullback == 57 &&
                         r.j_printed_initiator_pullback == 57;
    return r.responder_sigma_matches && r.responder_pullback_matches && r.component_matches && printed &&
           r.j_responder == 57 && r.j_initiator == 57 && secs < 1.0;
  });

  criterion("end_to_end_agreement", [](std::ostringstream& d) {
    const auto t0 = Clock::now();
    bool ok = true;
    for (auto [m, n] : {std::pair{3, 100}, std::pair{5, 50}}) {
      const SimulationStats s = simulate(101, m, 1, static_cast<std::size_t>(n), 2024 + m);
      const double err = static_cast<double>(s.errored()) / static_cast<double>(n);
      d << " m=" << m << ":" << s.agreed() << "/" << s.completed() << " agree, errored=" << s.errored();
      ok = ok && s.agreed() == s.completed() && err < 0.10;
    }
    const double secs = since(t0);
    d << " seconds=" << secs;
    return ok && secs < 60.0;
  });

  criterion("ttp_symmetry", [](std::ostringstream& d) {
    const TTPSetup setup = ttp_setup(101, 3, 77);
    int equal = 0, mirrored_errors = 0, asymmetric = 0, pairs = 0;
    for (std::uint64_t i = 0; equal < 100 && pairs < 200; ++i, ++pairs) {
      const TTPUser a = ttp_register(setup.params, 2 * i + 1);
      const TTPUser b = ttp_register(setup.params, 2 * i + 2);
      std::optional<Fq> ja, jb;
      std::optional<ErrorKind> ea, eb;
      try { ja = ttp_shared(setup.params, a, b.h).j; } catch (const Error& e) { ea = e.kind(); }
      try { jb = ttp_shared(setup.params, b, a.h).j; } catch (const Error& e) { eb = e.kind(); }
      if (ja && jb && *ja == *jb) ++equal;
      else if (ea && eb && *ea == *eb) ++mirrored_errors;
      else ++asymmetric;
    }
    d << " pairs=" << pairs << " equal=" << equal << " same_error_both_sides=" << mirrored_errors
      << " asymmetric=" << asymmetric;
    return equal >= 100 && asymmetric == 0;
  });

  criterion("glemb_conformance", [](std::ostringstream& d) {
    const PrimeField f(67);
    Stream rng(5, "acceptance.glemb");
    int printed = 0;
    for (int t = 0; t < 20; ++t) {
      const MatrixFq g = MatrixFq::random_invertible(f, 2, rng);
      const std::int64_t a = g(0, 0), b = g(0, 1), c = g(1, 0), e = g(1, 1);
      const MatrixFq expect = MatrixFq::from_rows(
          f, {{a * a, 2 * a * b, b * b}, {a * c, a * e + b * c, b * e}, {c * c, 2 * c * e, e * e}});
      printed += glemb(g, 2) == expect;
    }
    d << " printed_matrix=" << printed << "/20";
    bool ok = printed == 20;
    for (auto [n, m] : {std::pair{1, 2}, std::pair{3, 2}, std::pair{3, 3}}) {
      int hom = 0;
      for (int t = 0; t < 50; ++t) {
        const MatrixFq x = MatrixFq::random_invertible(f, n + 1, rng), y = MatrixFq::random_invertible(f, n + 1, rng);
        hom += glemb(x * y, m) == glemb(x, m) * glemb(y, m);
      }
      d << " hom(" << n << "," << m << ")=" << hom << "/50";
      ok = ok && hom == 50;
    }
    return ok;
  });

  criterion("j_invariance", [](std::ostringstream& d) {
    const PrimeField f(101);
    Stream rng(6, "acceptance.jinv");
    int transport = 0, scalar = 0;
    for (int t = 0; t < 100; ++t) {
      const BiForm g = random_smooth(f, rng);
      const Fq j = j_invariant(g);
      const MatrixFq g1 = MatrixFq::random_invertible(f, 2, rng), g2 = MatrixFq::random_invertible(f, 2, rng);
      transport += j_invariant(gl2_transport(g, g1, g2)) == j;
      scalar += j_invariant(g.scaled(f.random_nonzero(rng))) == j;
    }
    int singular_raised = 0, constructed = 0;
    for (int t = 0; constructed < 20; ++t) {
      // a line splitting off leaves a square in the branch quartic
      const BiForm g = t % 2 == 0 ? BiForm::random(f, 1, 0, rng) * BiForm::random(f, 1, 2, rng)
                                  : BiForm::random(f, 2, 1, rng) * BiForm::random(f, 0, 1, rng);
      if (g.is_zero()) continue;
      ++constructed;
      if (!has_repeated_root(branch_quartic(g))) continue;
      try {
        j_invariant(g);
      } catch (const Error& e) {
        singular_raised += e.kind() == ErrorKind::SingularCurve;
      }
    }
    int iff = 0, random_singular = 0;
    for (int t = 0; t < 2000; ++t) {
      const BiForm g = BiForm::random(f, 2, 2, rng);
      if (g.is_zero()) { ++iff; continue; }
      const bool oracle = has_repeated_root(branch_quartic(g));
      bool raised = false;
      try {
        j_invariant(g);
      } catch (const Error& e) {
        raised = e.kind() == ErrorKind::SingularCurve;
      }
      iff += raised == oracle;
      random_singular += oracle;
    }
    d << " transport=" << transport << "/100 scalar=" << scalar << "/100 constructed_singular=" << singular_raised
      << "/20 raised_iff_repeated_root=" << iff << "/2000 (singular among random: " << random_singular << ")";
    return transport == 100 && scalar == 100 && singular_raised == 20 && iff == 2000;
  });

  criterion("factorization_oracle", [](std::ostringstream& d) {
    const PrimeField f(101);
    Stream rng(7, "acceptance.factor");
    bool ok = true;
    for (int m : {3, 5, 6}) {
      int reconstructed = 0, keyed = 0, ambiguous = 0, miskeyed = 0;
      for (int t = 0; t < 200; ++t) {
        const BiForm c = random_irreducible_22(f, rng);
        const BiForm g = c * BiForm::random(f, m - 2, m - 2, rng);
        if (g.is_zero()) continue;
        reconstructed += expand(factor_biform(g, rng)) == g;
        try {
          const auto comps = extract_22(g, rng);
          if (comps.size() == 1 && same_up_to_scalar(comps[0], c)) ++keyed;
          else ++miskeyed;
        } catch (const AmbiguousComponents& e) {
          ++ambiguous;
          const auto& cs = e.candidates();
          if (std::none_of(cs.begin(), cs.end(), [&](const BiForm& x) { return same_up_to_scalar(x, c); }))
            ++miskeyed;
        }
      }
      d << " m=" << m << ": reconstructed=" << reconstructed << "/200 keyed=" << keyed
        << " ambiguous=" << ambiguous << " miskeyed=" << miskeyed;
      ok = ok && reconstructed == 200 && miskeyed == 0 && keyed + ambiguous == 200;
    }
    return ok;
  });

  criterion("quadric_dimensions", [](std::ostringstream& d) {
    const PrimeField f(101);
    Stream rng(8, "acceptance.quadrics");
    const auto q2 = quadric_system(VeroneseFrame::random(f, 2, rng), rng);
    const auto q3 = quadric_system(VeroneseFrame::random(f, 3, rng), rng);
    d << " m=2:" << q2.basis.rows() << " m=3:" << q3.basis.rows() << " formula(8)=" << expected_quadric_count(8)
      << " printed_closed_form(8)/72=" << printed_closed_form(8) / 72;
    return q2.basis.rows() == 20 && q3.basis.rows() == 126 && expected_quadric_count(2) == 20 &&
           expected_quadric_count(3) == 126 && expected_quadric_count(8) == 12726;
  });

  criterion("brute_force_sanity", [](std::ostringstream& d) {
    const std::uint64_t q = 5, q9 = 1953125, budget = 10 * q9;
    const TTPSetup setup = ttp_setup(q, 3, 9);
    const TTPUser victim = ttp_register(setup.params, 10);
    const auto t0 = Clock::now();
    const BruteForceResult r = brute_force_search(brute_force_target(setup.params, victim.h), budget, 11, 4);
    d << " trials=" << r.trials << " q^9=" << q9 << " ratio=" << static_cast<double>(r.trials) / q9
      << " seconds=" << since(t0);
    if (!r.word) return false;
    const auto& w = *r.word;
    const auto& p = setup.params;
    const MatrixFq s = pow(p.t1, w[0]) * pow(p.t2, w[1]) * pow(p.t1, w[2]) * pow(p.t2, w[3]) * p.sigma_t;
    const bool annihilates = (victim.h * s).is_zero();
    d << " word_annihilates=" << annihilates;
    return annihilates && r.trials <= budget;
  });

  criterion("order_construction", [](std::ostringstream& d) {
    bool ok = true;
    for (std::uint64_t q : {5ULL, 7ULL}) {
      const PrimeField f(q);
      const std::uint64_t full = q * q * q * q - 1;
      int exact = 0, bounded = 0;
      for (std::uint64_t s = 0; s < 5; ++s) {
        Stream rng(s, "acceptance.order");
        const AutomorphismKey k = gen_automorphism_pair(VeroneseFrame::random(f, 3, rng), rng);
        exact += brute_order(k.u1, full) == full;
        exact += brute_order(k.u2, full) == full;
        const AutomorphismKey p = gen_permutation_variant(VeroneseFrame::random_generalized_permutation(f, 3, rng), rng);
        for (const MatrixFq* a : {&p.a1, &p.a2}) {
          const std::uint64_t o = brute_order(*a, 4 * (q - 1));
          bounded += o != 0 && o <= 4 * (q - 1);
        }
      }
      d << " q=" << q << ": U' order " << full << " in " << exact << "/10, version-2 order<=" << 4 * (q - 1)
        << " in " << bounded << "/10";
      ok = ok && exact == 10 && bounded == 10;
    }
    return ok;
  });

  criterion("key_size_arithmetic", [](std::ostringstream& d) {
    d << " public_key_bits(m=8,l=64)=" << public_key_bits(8, 64);
    return public_key_bits(8, 64) == 5184;
  });

  return failures == 0 ? 0 : 1;
}
